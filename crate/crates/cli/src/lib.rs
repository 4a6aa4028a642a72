#![allow(clippy::result_large_err)]

pub mod corpus;
pub mod dot;
pub mod io;
pub mod suite;
