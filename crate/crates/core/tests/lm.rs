mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smtwb::lm::{
    count_ngrams, estimate_kneser_ney, estimate_witten_bell, interpolate, perplexity, read_arpa, split_sentences,
    tune_weights, write_arpa, NGramModel, Vocab, BOS, LOG_ZERO,
};

use common::lm_oracle::{Method, Oracle};

const TOY: [&str; 3] = ["a b c", "a c", "b c a b"];

fn train(lines: &[&str], order: usize, method: Method) -> NGramModel {
    let c = count_ngrams(&split_sentences(lines), order).unwrap();
    match method {
        Method::KneserNey => estimate_kneser_ney(&c).unwrap(),
        Method::WittenBell => estimate_witten_bell(&c).unwrap(),
    }
}

fn check_against_oracle(order: usize, method: Method) -> usize {
    let model = train(&TOY, order, method);
    let oracle = Oracle::new(&TOY, order, method);
    assert_eq!(oracle.order(), model.order());
    let v = model.vocab();
    let mut checked = 0;
    for n in 1..=order {
        for (ids, logp) in model.ngrams(n) {
            let w: Vec<String> = ids.iter().map(|&i| v.word(i).to_owned()).collect();
            if n == 1 && w[0] == BOS {
                assert_eq!(logp, LOG_ZERO);
                continue;
            }
            let expected = oracle.prob(&w[..n - 1], &w[n - 1]);
            let got = 10f64.powf(logp);
            assert!((got - expected).abs() < 1e-9, "{method:?} {w:?}: {got} vs {expected}");
            checked += 1;
        }
    }
    checked
}

#[test]
fn kneser_ney_matches_oracle() {
    let checked: usize = (1..=3).map(|n| check_against_oracle(n, Method::KneserNey)).sum();
    assert!(checked > 20);
}

#[test]
fn witten_bell_matches_oracle() {
    let checked: usize = (1..=3).map(|n| check_against_oracle(n, Method::WittenBell)).sum();
    assert!(checked > 20);
}

/// Queries through the back-off recursion, including unseen histories.
#[test]
fn backoff_queries_match_oracle() {
    let words = ["a", "b", "c", "</s>", "<s>", "zzz"];
    for method in [Method::KneserNey, Method::WittenBell] {
        let model = train(&TOY, 3, method);
        let oracle = Oracle::new(&TOY, 3, method);
        for h1 in words {
            for h2 in words {
                for w in ["a", "b", "c", "</s>"] {
                    let h = [h1.to_owned(), h2.to_owned()];
                    // history words unknown to the model act as <unk>
                    let hn: Vec<String> = h.iter().map(|x| if x == "zzz" { "<unk>".into() } else { x.clone() }).collect();
                    let got = 10f64.powf(model.logprob_words(&[h1, h2], w));
                    let exp = oracle.prob(&hn, w);
                    assert!((got - exp).abs() < 1e-9, "{method:?} {h:?} {w}: {got} vs {exp}");
                }
            }
        }
    }
}

fn random_corpus(rng: &mut ChaCha8Rng, vocab: usize, sentences: usize) -> Vec<String> {
    (0..sentences)
        .map(|_| {
            let len = rng.gen_range(1..10);
            (0..len).map(|_| format!("w{}", rng.gen_range(0..vocab))).collect::<Vec<_>>().join(" ")
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn every_history_normalizes(seed in any::<u64>(), order in 1usize..5, wb in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lines = random_corpus(&mut rng, 30, 40);
        let c = count_ngrams(&split_sentences(&lines), order).unwrap();
        let m = if wb { estimate_witten_bell(&c).unwrap() } else { estimate_kneser_ney(&c).unwrap() };
        for h in m.histories() {
            let s = m.distribution_sum(&h);
            prop_assert!((s - 1.0).abs() < 1e-6, "{} {:?} {}", m.smoothing(), h, s);
        }
        for (_, lp) in (1..=m.order()).flat_map(|n| m.ngrams(n)) {
            prop_assert!(lp <= 1e-12);
        }
    }

    #[test]
    fn arpa_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lines = random_corpus(&mut rng, 20, 30);
        let m = train(&lines.iter().map(String::as_str).collect::<Vec<_>>(), 3, Method::KneserNey);
        let mut buf = Vec::new();
        write_arpa(&m, &mut buf).unwrap();
        let back = read_arpa(buf.as_slice()).unwrap();
        for s in split_sentences(&random_corpus(&mut rng, 25, 10)) {
            let a = m.sentence_logprob(&s).log10_prob;
            let b = back.sentence_logprob(&s).log10_prob;
            prop_assert!((a - b).abs() < 1e-4);
        }
    }
}

#[test]
fn training_text_beats_unrelated_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let train_lines = random_corpus(&mut rng, 40, 200);
    let other: Vec<String> = random_corpus(&mut rng, 40, 50).iter().map(|s| s.replace('w', "v")).collect();
    let m = train(&train_lines.iter().map(String::as_str).collect::<Vec<_>>(), 3, Method::KneserNey);
    let own = perplexity(&m, &split_sentences(&train_lines)).perplexity;
    let unrelated = perplexity(&m, &split_sentences(&other)).perplexity;
    assert!(own < unrelated, "{own} vs {unrelated}");
}

/// A back-off model can only hold the exact mixture for events it stores;
/// other events go through the mixed back-off weights.
#[test]
fn half_half_mixture_is_pointwise_mean() {
    // same word set, different statistics
    let a = train(&["x y z", "x x y", "z y"], 2, Method::WittenBell);
    let b = train(&["z z x", "y x", "y z x y"], 2, Method::KneserNey);
    let mix = interpolate(&[a.clone(), b.clone()], &[0.5, 0.5]).unwrap();
    for n in 1..=2 {
        for (ids, logp) in mix.ngrams(n) {
            let w: Vec<&str> = ids.iter().map(|&i| mix.vocab().word(i)).collect();
            if n == 1 && w[0] == BOS {
                continue;
            }
            let (h, last) = w.split_at(n - 1);
            let pa = 10f64.powf(a.logprob_words(h, last[0]));
            let pb = 10f64.powf(b.logprob_words(h, last[0]));
            let got = 10f64.powf(logp);
            assert!((got - 0.5 * (pa + pb)).abs() < 1e-9, "{w:?}");
        }
    }
}

#[test]
fn unit_weight_reproduces_component() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let la = random_corpus(&mut rng, 30, 80);
    let lb = random_corpus(&mut rng, 50, 80);
    let a = train(&la.iter().map(String::as_str).collect::<Vec<_>>(), 3, Method::KneserNey);
    let b = train(&lb.iter().map(String::as_str).collect::<Vec<_>>(), 3, Method::WittenBell);
    let dev = split_sentences(&random_corpus(&mut rng, 30, 40));
    let mix = interpolate(&[a.clone(), b], &[1.0, 0.0]).unwrap();
    let pa = perplexity(&a, &dev).perplexity;
    let pm = perplexity(&mix, &dev).perplexity;
    assert!(((pa - pm) / pa).abs() < 1e-4, "{pa} vs {pm}");
}

#[test]
fn tuning_prefers_in_domain_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let la = random_corpus(&mut rng, 30, 150);
    let lb: Vec<String> = random_corpus(&mut rng, 30, 150).iter().map(|s| s.replace('w', "q")).collect();
    let a = train(&la.iter().map(String::as_str).collect::<Vec<_>>(), 2, Method::KneserNey);
    let b = train(&lb.iter().map(String::as_str).collect::<Vec<_>>(), 2, Method::KneserNey);
    let r = tune_weights(&[a, b], &split_sentences(&la[..50])).unwrap();
    assert!(r.weights[0] > 0.5, "{:?}", r.weights);
    assert!(r.log_likelihoods.windows(2).all(|w| w[1] >= w[0] - 1e-12));
}

#[test]
fn bos_has_no_unigram_mass() {
    let m = train(&TOY, 2, Method::KneserNey);
    assert_eq!(m.logprob(&[], Vocab::BOS_ID), LOG_ZERO);
}
