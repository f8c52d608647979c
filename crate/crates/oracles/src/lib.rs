//! Reference computations that share no code with `plfun`.  Each one takes a
//! deliberately different route to the same quantity.

pub mod bernoulli;
pub mod eta;
pub mod periods;
pub mod splitting;
