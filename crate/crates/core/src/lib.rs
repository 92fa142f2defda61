pub mod arith;
pub mod identities;
pub mod multipolylog;
pub mod ncalg;
pub mod qcore;
