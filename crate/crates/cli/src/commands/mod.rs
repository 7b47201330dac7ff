pub mod align;
pub mod corpus;
pub mod lm;
pub mod score;
