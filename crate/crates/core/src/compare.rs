//! Side-by-side invariants of two groups: order, class number, `p`-exponent by two methods
//! and the Kuelshammer dimension profile of `F_p G`.
//!
//! The verdict only records whether these invariants differ; it makes no claim about the
//! group algebras beyond them.

use alloc::format;
use alloc::string::String;

use crate::classes::{conjugacy_classes, kuelshammer_profile, ClassPartition, KuelshammerProfile};
use crate::enumerate::{enumerate_group, ElementTable, ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::group::{exponent_gap_regime, GroupDesc};
use crate::sylow::{p_exponent, ExponentResult, Method, Strategy, SylowStream, SYLOW_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareOptions {
    pub enum_cap: u128,
    /// Sylow scans larger than this are sampled instead of exhaustive.
    pub sylow_cap: u128,
    pub trials: u64,
    pub seed: u64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            enum_cap: ENUMERATION_CAP,
            sylow_cap: SYLOW_CAP,
            trials: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Distinguished,
    NotDistinguished,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Distinguished => "DISTINGUISHED",
            Verdict::NotDistinguished => "NOT DISTINGUISHED BY THESE INVARIANTS",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSummary {
    pub group: GroupDesc,
    pub order: u128,
    pub num_classes: usize,
    pub sylow: ExponentResult,
    pub profile: KuelshammerProfile,
    /// `p^{stab_index}` from the profile; exact.
    pub profile_exponent: u128,
}

impl GroupSummary {
    /// The exact `p`-exponent, taken from the profile.
    pub fn p_exponent(&self) -> u128 {
        self.profile_exponent
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub a: GroupSummary,
    pub b: GroupSummary,
    /// The parameter range in which the `p`-exponents of the two ring kinds are known to differ,
    /// when both groups share `(n, p, r)` and it lies in one.
    pub regime: Option<&'static str>,
    pub verdict: Verdict,
    /// Why the verdict was reached.
    pub reason: String,
}

/// Sylow exponent (exhaustive when the stream fits `sylow_cap`) and the class-count profile,
/// cross-checked against each other.
pub fn summarize(
    table: &ElementTable,
    part: &ClassPartition,
    options: &CompareOptions,
) -> Result<GroupSummary> {
    let group = table.group();
    let p = group.ring().p();
    let stream_len = SylowStream::new(group)?.len();
    let strategy = if stream_len <= options.sylow_cap {
        Strategy::Exhaustive
    } else {
        Strategy::Sampled {
            trials: options.trials,
            seed: options.seed,
        }
    };
    let sylow = p_exponent(group, strategy)?;
    let profile = kuelshammer_profile(table, part, p)?;
    let profile_exponent = profile.p_exponent();
    let consistent = match sylow.method {
        Method::Exhaustive => sylow.value == profile_exponent,
        Method::Sampled => sylow.value <= profile_exponent,
    };
    if !consistent {
        return Err(Error::Inconsistent(format!(
            "{}: Sylow exponent {} vs class-profile exponent {profile_exponent}",
            group.label(),
            sylow.value
        )));
    }
    Ok(GroupSummary {
        group: group.clone(),
        order: table.size() as u128,
        num_classes: part.num_classes(),
        sylow,
        profile,
        profile_exponent,
    })
}

pub fn compare_summaries(a: GroupSummary, b: GroupSummary) -> Result<ComparisonReport> {
    let (ra, rb) = (a.group.ring(), b.group.ring());
    if ra.p() != rb.p() {
        return Err(Error::InvalidParameter(
            "compared groups must share the prime p".into(),
        ));
    }
    let same_shape = a.group.n() == b.group.n() && ra.r() == rb.r();
    let regime = if same_shape {
        exponent_gap_regime(a.group.n(), ra.p(), ra.r())
    } else {
        None
    };
    let (verdict, reason) = if a.p_exponent() != b.p_exponent() {
        (
            Verdict::Distinguished,
            format!(
                "p-exponents differ: {} vs {}",
                a.p_exponent(),
                b.p_exponent()
            ),
        )
    } else if let Some(n) = (0..a.profile.dims.len().max(b.profile.dims.len()))
        .find(|&n| a.profile.dims.get(n) != b.profile.dims.get(n))
    {
        (
            Verdict::Distinguished,
            format!("Kuelshammer dimensions differ first at n = {n}"),
        )
    } else {
        (
            Verdict::NotDistinguished,
            "p-exponents and Kuelshammer dimensions agree".into(),
        )
    };
    Ok(ComparisonReport {
        a,
        b,
        regime,
        verdict,
        reason,
    })
}

/// Enumerates both groups, computes their classes and compares.
pub fn compare_groups(
    a: &GroupDesc,
    b: &GroupDesc,
    options: &CompareOptions,
) -> Result<ComparisonReport> {
    let summary = |g: &GroupDesc| -> Result<GroupSummary> {
        let table = enumerate_group(g, options.enum_cap)?;
        let part = conjugacy_classes(&table);
        summarize(&table, &part, options)
    };
    compare_summaries(summary(a)?, summary(b)?)
}
