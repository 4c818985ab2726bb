//! Lucas sequences, p-adic quotients and congruence checking.

pub mod cli;
pub mod congruences;
pub mod lucas;
pub mod modmath;
pub mod padic;
pub mod quadring;
pub mod report;
pub mod wss;
