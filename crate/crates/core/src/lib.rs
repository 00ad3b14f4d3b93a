//! Exact arithmetic for matrix groups over truncated local rings `F_q[t]/t^r` and
//! `W_r(F_q)`, and for the Kuelshammer ideals of their group algebras over `F_p`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod classes;
pub mod compare;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod group;
pub mod lemmas;
pub mod mat;
pub mod oracle;
mod poly;
pub mod ring;
pub mod selftest;
pub mod sylow;

pub use classes::{conjugacy_classes, kuelshammer_profile, ClassPartition, KuelshammerProfile};
pub use compare::{compare_groups, CompareOptions, ComparisonReport, Verdict};
pub use enumerate::{enumerate_group, ElementTable, ENUMERATION_CAP};
pub use error::{Error, Result};
pub use field::{FieldDesc, FqElem};
pub use group::{Family, GroupDesc};
pub use mat::{Mat, MatSpace};
pub use ring::{RElem, RingDesc, RingKind};
pub use sylow::{p_exponent, ExponentResult, Strategy, SylowStream};
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
