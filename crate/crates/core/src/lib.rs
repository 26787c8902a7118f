pub mod algebraic;
pub mod arith;
pub mod error;
pub mod formula;
pub mod parse;
pub mod poly;
pub mod membership;
pub mod rcell;
pub mod render;
pub mod solver;
pub mod trace;
