pub mod ars;
pub mod lambda;
pub mod rewrite;
pub mod ski;
pub mod stlc;
pub mod stlcext;
pub mod surface;
pub mod testkit;
