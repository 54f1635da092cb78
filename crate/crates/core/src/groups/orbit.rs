//! Conjugacy classes in infinite families by breadth-first search.
//!
//! The conjugacy class of `a` is its orbit under `x -> c^{-1} x c`. Because the
//! group is generated by the family generators, a set containing `a` that is
//! closed under conjugation by every generator and its inverse is closed under
//! conjugation by every element, and the smallest such set is the class. The
//! search therefore only ever conjugates by generators, and a closed search is
//! an exact answer.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::infinite::{FamilyElement, InfiniteGroup};
use super::Group;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitStatus {
    /// The orbit closed; the whole class, sorted.
    Finite(Vec<FamilyElement>),
    /// More than `cap` elements, or the normal-form length cap was hit before
    /// the orbit closed.
    AtLeast(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyOrbit {
    pub base: FamilyElement,
    pub status: OrbitStatus,
    /// Distinct elements seen before stopping.
    pub visited: usize,
}

pub fn conjugacy_orbit(group: &InfiniteGroup, a: &FamilyElement, cap: usize) -> ConjugacyOrbit {
    let cap = cap.max(1);
    let mut seen = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    let mut truncated = false;
    while let Some(x) = queue.pop_front() {
        for g in group.generators_for(group.extent(&x)) {
            let y = group.conjugate(&x, &g);
            if group.extent(&y) > group.length_cap() {
                truncated = true;
                continue;
            }
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return ConjugacyOrbit {
                        base: a.clone(),
                        status: OrbitStatus::AtLeast(cap),
                        visited: seen.len(),
                    };
                }
                queue.push_back(y);
            }
        }
    }
    let visited = seen.len();
    ConjugacyOrbit {
        base: a.clone(),
        status: if truncated {
            OrbitStatus::AtLeast(cap)
        } else {
            OrbitStatus::Finite(seen.into_iter().collect())
        },
        visited,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IccVerdict {
    CertifiedAtLeast { cap: usize },
    FiniteClass { size: usize, class: Vec<String> },
}

/// Orbit status for each probe. One finite class proves the operator algebra
/// is not a factor; probes that all reach the cap are only evidence that it is.
pub fn icc_check(group: &InfiniteGroup, probes: &[FamilyElement], cap: usize) -> Result<Vec<IccVerdict>> {
    if probes.iter().any(|p| group.is_identity(p)) {
        return Err(Error::IdentityProbe);
    }
    Ok(probes
        .iter()
        .map(|p| match conjugacy_orbit(group, p, cap).status {
            OrbitStatus::AtLeast(cap) => IccVerdict::CertifiedAtLeast { cap },
            OrbitStatus::Finite(class) => IccVerdict::FiniteClass {
                size: class.len(),
                class: class.iter().map(|x| group.label(x)).collect(),
            },
        })
        .collect())
}
