//! Exhaustive ground truth: matching enumeration, head-to-head vote tallies,
//! brute-force popularity and brute-force maximum weight.

use alloc::vec::Vec;

use thiserror::Error;

use crate::characterize::{Certificate, Method, RivalKind, Verdict};
use crate::instance::{Instance, Variant, Vertex};
use crate::matching::{maximum_matching, Graph, Matching, MatchingError};
use crate::weights::{require_a_perfect, EdgeWeights, WeightError};

/// Default limit on the number of edges the exhaustive routines accept.
pub const DEFAULT_GUARD_EDGES: usize = 24;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{edges} edges exceed the enumeration limit of {guard}")]
    TooLarge { edges: usize, guard: usize },
    #[error("no left-perfect matching exists")]
    Infeasible,
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

fn guard_check(g: &Graph, guard: usize) -> Result<(), OracleError> {
    if g.edge_count() > guard {
        Err(OracleError::TooLarge {
            edges: g.edge_count(),
            guard,
        })
    } else {
        Ok(())
    }
}

/// Depth-first enumeration of matchings, in lexicographic order of their
/// sorted edge-id lists (for graphs whose edges are sorted by left vertex,
/// which includes every instance graph).
pub struct Matchings<'g> {
    g: &'g Graph,
    a_perfect: bool,
    lefts: Vec<Vertex>,
    /// Chosen edge ids (all matchings) or chosen positions in each left
    /// vertex's incidence list (left-perfect matchings).
    stack: Vec<usize>,
    current: Matching,
    started: bool,
    done: bool,
}

/// Every matching of `g`, or every left-perfect one, exactly once.
pub fn enumerate_matchings(g: &Graph, a_perfect: bool) -> Result<Matchings<'_>, OracleError> {
    let lefts: Vec<Vertex> = g.left_vertices().collect();
    if a_perfect && !maximum_matching(g).covers(&lefts) {
        return Err(OracleError::Infeasible);
    }
    Ok(Matchings {
        g,
        a_perfect,
        lefts,
        stack: Vec::new(),
        current: Matching::empty(g.vertex_count()),
        started: false,
        done: false,
    })
}

impl Matchings<'_> {
    fn free_edge(&self, e: usize) -> bool {
        let (l, r) = self.g.edge(e);
        !self.current.is_matched(l) && !self.current.is_matched(r)
    }

    fn push_edge(&mut self, e: usize) {
        let (l, r) = self.g.edge(e);
        self.current.insert(l, r).expect("free edge");
    }

    fn pop_edge(&mut self, e: usize) {
        let (l, _) = self.g.edge(e);
        self.current.remove(l);
    }

    fn next_any(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        let m = self.g.edge_count();
        // Extend with the smallest compatible edge above the last one.
        let mut from = self.stack.last().map_or(0, |&e| e + 1);
        loop {
            if let Some(e) = (from..m).find(|&e| self.free_edge(e)) {
                self.push_edge(e);
                self.stack.push(e);
                return true;
            }
            // Otherwise replace the last edge by a larger sibling.
            match self.stack.pop() {
                Some(last) => {
                    self.pop_edge(last);
                    from = last + 1;
                }
                None => return false,
            }
        }
    }

    /// Edge id at position `pos` of the incidence list of left vertex `k`.
    fn choice(&self, k: usize, pos: usize) -> Option<usize> {
        self.g.incident(self.lefts[k]).get(pos).copied()
    }

    fn next_perfect(&mut self) -> bool {
        let n = self.lefts.len();
        // Position to try next at the current depth.
        let mut pos = if !self.started {
            self.started = true;
            if n == 0 {
                return true;
            }
            0
        } else {
            match self.stack.pop() {
                Some(p) => {
                    let e = self.choice(self.stack.len(), p).expect("chosen");
                    self.pop_edge(e);
                    p + 1
                }
                None => return false,
            }
        };
        loop {
            let k = self.stack.len();
            match self.choice(k, pos) {
                Some(e) if self.free_edge(e) => {
                    self.push_edge(e);
                    self.stack.push(pos);
                    if self.stack.len() == n {
                        return true;
                    }
                    pos = 0;
                }
                Some(_) => pos += 1,
                None => match self.stack.pop() {
                    Some(p) => {
                        let e = self.choice(self.stack.len(), p).expect("chosen");
                        self.pop_edge(e);
                        pos = p + 1;
                    }
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for Matchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        let found = if self.a_perfect {
            self.next_perfect()
        } else {
            self.next_any()
        };
        if found {
            Some(self.current.clone())
        } else {
            self.done = true;
            None
        }
    }
}

/// Signed tally of voters preferring `m` over `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Delta {
    pub value: i64,
    pub prefers_m: u32,
    pub prefers_n: u32,
}

fn tally(m_ranks: &[u32], n_ranks: &[u32]) -> Delta {
    let (mut prefers_m, mut prefers_n) = (0, 0);
    for (a, b) in m_ranks.iter().zip(n_ranks) {
        match a.cmp(b) {
            core::cmp::Ordering::Less => prefers_m += 1,
            core::cmp::Ordering::Greater => prefers_n += 1,
            core::cmp::Ordering::Equal => {}
        }
    }
    Delta {
        value: i64::from(prefers_m) - i64::from(prefers_n),
        prefers_m,
        prefers_n,
    }
}

fn voter_ranks(inst: &Instance, voters: &[Vertex], m: &Matching) -> Vec<u32> {
    voters
        .iter()
        .map(|&v| inst.partner_rank(v, m.mate(v)))
        .collect()
}

/// `Δ(m, n)`: applicants vote in HA/HAT, everybody votes in SMI. Being
/// unmatched ranks below every partner.
pub fn delta(inst: &Instance, m: &Matching, n: &Matching) -> Delta {
    let voters = inst.voter_list();
    tally(&voter_ranks(inst, &voters, m), &voter_ranks(inst, &voters, n))
}

/// Exhaustive popularity tester with the rival set enumerated once.
///
/// Rivals are the left-perfect matchings for HA/HAT and all matchings for
/// SMI.
pub struct Oracle<'i> {
    inst: &'i Instance,
    voters: Vec<Vertex>,
    rivals: Vec<Matching>,
    rival_ranks: Vec<Vec<u32>>,
}

impl<'i> Oracle<'i> {
    pub fn new(inst: &'i Instance, guard: usize) -> Result<Self, OracleError> {
        guard_check(inst.graph(), guard)?;
        let a_perfect = inst.variant() != Variant::Smi;
        let rivals: Vec<Matching> = enumerate_matchings(inst.graph(), a_perfect)?.collect();
        let voters = inst.voter_list();
        let rival_ranks = rivals
            .iter()
            .map(|n| voter_ranks(inst, &voters, n))
            .collect();
        Ok(Oracle {
            inst,
            voters,
            rivals,
            rival_ranks,
        })
    }

    /// The rival set, which is also the set of candidate matchings.
    pub fn rivals(&self) -> &[Matching] {
        &self.rivals
    }

    /// Popular iff `Δ(m, n) − Δ(n, m) ≥ 0` for every rival `n`. A negative
    /// verdict names the first rival with the smallest such value.
    pub fn verdict(&self, m: &Matching) -> Result<Verdict, OracleError> {
        m.check_in(self.inst.graph())?;
        if self.inst.variant() != Variant::Smi {
            require_a_perfect(self.inst, m)?;
        }
        let own = voter_ranks(self.inst, &self.voters, m);
        let mut worst: Option<(i64, usize)> = None;
        for (i, ranks) in self.rival_ranks.iter().enumerate() {
            let score = tally(&own, ranks).value - tally(ranks, &own).value;
            if score < 0 && worst.is_none_or(|(s, _)| score < s) {
                worst = Some((score, i));
            }
        }
        let certificate = match worst {
            None => Certificate::Exhaustive {
                rivals: self.rivals.len() as u64,
            },
            Some((_, i)) => Certificate::Rival {
                matching: self.rivals[i].clone(),
                kind: RivalKind::Beats {
                    delta: tally(&self.rival_ranks[i], &own).value,
                },
            },
        };
        Ok(Verdict {
            popular: worst.is_none(),
            method: Method::BruteForce,
            certificate,
        })
    }
}

/// One-shot exhaustive popularity test.
pub fn is_popular_bruteforce(
    inst: &Instance,
    m: &Matching,
    guard: usize,
) -> Result<Verdict, OracleError> {
    Oracle::new(inst, guard)?.verdict(m)
}

/// Largest total weight over all matchings (or all left-perfect ones).
pub fn max_weight_bruteforce(
    g: &Graph,
    w: &EdgeWeights,
    a_perfect: bool,
    guard: usize,
) -> Result<i64, OracleError> {
    guard_check(g, guard)?;
    Ok(enumerate_matchings(g, a_perfect)?
        .map(|m| w.of(g, &m))
        .max()
        .unwrap_or(0))
}
