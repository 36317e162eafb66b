//! The Weyl superalgebra generated by `x_{i,a}`, `d_{i,a}` with
//! `1 <= i <= m+n`, `1 <= a <= k`; rows above `m` are odd.

mod element;
mod ordering;
mod parity;
mod word;

pub use element::{NOElement, SuperWeyl};
pub use ordering::{normal_order_symbol, rewrite, Scan};
pub use parity::{Grade, Parity, ParitySequence};
pub use word::{Generator, Kind, NOWord, Site};
