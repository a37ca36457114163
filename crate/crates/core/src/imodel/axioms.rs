use std::collections::VecDeque;
use std::fmt;

use super::{IndependenceModel, Limits, Triple};
use crate::error::{Error, Result};
use crate::graph::NodeSet;

/// The six rules, quantified over pairwise disjoint `A, B, C, D`:
///
/// - S1 `⟨A,B|C⟩ ⇒ ⟨B,A|C⟩`
/// - S2 `⟨A,B∪D|C⟩ ⇒ ⟨A,B|C⟩ ∧ ⟨A,D|C⟩`
/// - S3 `⟨A,B∪D|C⟩ ⇒ ⟨A,B|C∪D⟩ ∧ ⟨A,D|C∪B⟩`
/// - S4 `⟨A,B|C∪D⟩ ∧ ⟨A,D|C⟩ ⟺ ⟨A,B∪D|C⟩`
/// - S5 `⟨A,B|C∪D⟩ ∧ ⟨A,D|C∪B⟩ ⇒ ⟨A,B∪D|C⟩`
/// - S6 `⟨A,B|C⟩ ∧ ⟨A,D|C⟩ ⇒ ⟨A,B∪D|C⟩`
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4, Axiom::S5, Axiom::S6];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::S1 => "symmetry",
            Axiom::S2 => "decomposition",
            Axiom::S3 => "weak union",
            Axiom::S4 => "contraction",
            Axiom::S5 => "intersection",
            Axiom::S6 => "composition",
        }
    }

    pub fn parse(s: &str) -> Option<Axiom> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s1" => Some(Axiom::S1),
            "s2" => Some(Axiom::S2),
            "s3" => Some(Axiom::S3),
            "s4" => Some(Axiom::S4),
            "s5" => Some(Axiom::S5),
            "s6" => Some(Axiom::S6),
            _ => None,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// One failed instance: the sets that instantiate the rule and a
/// conclusion the model lacks. For the reverse direction of S4 the missing
/// statement is one of its premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub a: NodeSet,
    pub b: NodeSet,
    pub c: NodeSet,
    pub d: NodeSet,
    pub missing: Triple,
}

fn for_each_quad(ground: NodeSet, mut f: impl FnMut(NodeSet, NodeSet, NodeSet, NodeSet)) {
    for a in ground.subsets() {
        let r1 = ground - a;
        for b in r1.subsets() {
            let r2 = r1 - b;
            for c in r2.subsets() {
                for d in (r2 - c).subsets() {
                    f(a, b, c, d);
                }
            }
        }
    }
}

/// Every instance of `which` that `m` fails, in enumeration order.
pub fn check_axiom(m: &IndependenceModel, which: Axiom) -> Vec<Violation> {
    let mut out = Vec::new();
    let has = |a, b, c| m.contains(&Triple::raw(a, b, c));
    let ground = m.ground();
    for_each_quad(ground, |a, b, c, d| {
        let mut miss = |t: Triple| {
            out.push(Violation {
                axiom: which,
                a,
                b,
                c,
                d,
                missing: t,
            })
        };
        match which {
            Axiom::S1 => {
                if d.is_empty() && has(a, b, c) && !has(b, a, c) {
                    miss(Triple::raw(b, a, c));
                }
            }
            Axiom::S2 => {
                if has(a, b | d, c) {
                    for t in [Triple::raw(a, b, c), Triple::raw(a, d, c)] {
                        if !m.contains(&t) {
                            miss(t);
                        }
                    }
                }
            }
            Axiom::S3 => {
                if has(a, b | d, c) {
                    for t in [Triple::raw(a, b, c | d), Triple::raw(a, d, c | b)] {
                        if !m.contains(&t) {
                            miss(t);
                        }
                    }
                }
            }
            Axiom::S4 => {
                let left = has(a, b, c | d) && has(a, d, c);
                let right = has(a, b | d, c);
                if left && !right {
                    miss(Triple::raw(a, b | d, c));
                }
                if right && !left {
                    for t in [Triple::raw(a, b, c | d), Triple::raw(a, d, c)] {
                        if !m.contains(&t) {
                            miss(t);
                        }
                    }
                }
            }
            Axiom::S5 => {
                if has(a, b, c | d) && has(a, d, c | b) && !has(a, b | d, c) {
                    miss(Triple::raw(a, b | d, c));
                }
            }
            Axiom::S6 => {
                if has(a, b, c) && has(a, d, c) && !has(a, b | d, c) {
                    miss(Triple::raw(a, b | d, c));
                }
            }
        }
    });
    out
}

/// Least superset of `m` closed under `axioms`, using the default bound.
pub fn closure(m: &IndependenceModel, axioms: &[Axiom]) -> Result<IndependenceModel> {
    closure_with(m, axioms, Limits::default().closure)
}

/// Worklist fixpoint. Each newly derived statement is matched against
/// every rule in every premise position it can occupy; partners are found
/// by enumerating the subsets the rule leaves free.
pub fn closure_with(m: &IndependenceModel, axioms: &[Axiom], bound: usize) -> Result<IndependenceModel> {
    if m.node_count() > bound {
        return Err(Error::SizeLimit {
            what: "closure",
            actual: m.node_count(),
            bound,
        });
    }
    let on = |x: Axiom| axioms.contains(&x);
    let (s1, s2, s3, s4, s5, s6) = (on(Axiom::S1), on(Axiom::S2), on(Axiom::S3), on(Axiom::S4), on(Axiom::S5), on(Axiom::S6));
    let ground = m.ground();
    let mut out = m.clone();
    let mut queue: VecDeque<Triple> = m.iter().collect();
    let mut derived = Vec::new();
    while let Some(t) = queue.pop_front() {
        let (a, x, y) = (t.a, t.b, t.c);
        let rest = ground - a - x - y;
        derived.clear();
        if s1 {
            derived.push(Triple::raw(x, a, y));
        }
        // unary rules split X = B ∪ D
        if s2 || s3 || s4 {
            for b in x.subsets() {
                let d = x - b;
                if b.is_empty() || d.is_empty() {
                    continue;
                }
                if s2 || s4 {
                    derived.push(Triple::raw(a, d, y));
                }
                if s3 || s4 {
                    derived.push(Triple::raw(a, b, y | d));
                }
            }
        }
        if s4 || s5 {
            // t = ⟨A,B|C∪D⟩ with B = X, D ⊆ Y
            for d in y.subsets() {
                if d.is_empty() {
                    continue;
                }
                let c = y - d;
                let conc = Triple::raw(a, x | d, c);
                if s4 && out.contains(&Triple::raw(a, d, c)) {
                    derived.push(conc);
                }
                if s5 && out.contains(&Triple::raw(a, d, c | x)) {
                    derived.push(conc);
                }
            }
        }
        if s4 || s6 {
            for b in rest.subsets() {
                if b.is_empty() {
                    continue;
                }
                let conc = Triple::raw(a, b | x, y);
                // contraction with t = ⟨A,D|C⟩ as second premise
                if s4 && out.contains(&Triple::raw(a, b, y | x)) {
                    derived.push(conc);
                }
                if s6 && out.contains(&Triple::raw(a, b, y)) {
                    derived.push(conc);
                }
            }
        }
        for &n in &derived {
            if out.insert(n) {
                queue.push_back(n);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(labels: &[&str], ts: &[(&[&str], &[&str], &[&str])]) -> IndependenceModel {
        let mut m = IndependenceModel::empty(labels).unwrap();
        for (a, b, c) in ts {
            let t = m.triple(a, b, c).unwrap();
            m.insert(t);
        }
        m
    }

    #[test]
    fn empty_model_is_closed_and_valid() {
        let m = IndependenceModel::empty(&["1", "2", "3"]).unwrap();
        for ax in Axiom::ALL {
            assert!(check_axiom(&m, ax).is_empty());
        }
        assert!(closure(&m, &Axiom::ALL).unwrap().is_empty());
    }

    #[test]
    fn symmetry_only_adds_the_mirror() {
        let m = model(&["1", "2", "3"], &[(&["1"], &["2"], &[])]);
        let c = closure(&m, &[Axiom::S1]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.contains(&c.triple(&["2"], &["1"], &[]).unwrap()));
    }

    #[test]
    fn violation_reports_instance() {
        let m = model(&["1", "2", "3"], &[(&["1"], &["2", "3"], &[])]);
        let v = check_axiom(&m, Axiom::S2);
        // both orderings of the split {2},{3} each miss two conclusions
        assert_eq!(v.len(), 4);
        assert!(v.iter().any(|x| x.missing == m.triple(&["1"], &["2"], &[]).unwrap()));
        let c = closure(&m, &[Axiom::S2]).unwrap();
        assert!(check_axiom(&c, Axiom::S2).is_empty());
    }

    #[test]
    fn full_closure_satisfies_every_axiom() {
        let m = model(
            &["1", "2", "3", "4"],
            &[(&["1"], &["2"], &["3"]), (&["1"], &["3"], &[]), (&["4"], &["2"], &["1"])],
        );
        let c = closure(&m, &Axiom::ALL).unwrap();
        for ax in Axiom::ALL {
            assert!(check_axiom(&c, ax).is_empty(), "{ax:?}");
        }
        assert_eq!(closure(&c, &Axiom::ALL).unwrap(), c);
        assert!(m.is_subset(&c));
    }

    #[test]
    fn closure_is_least_per_rule() {
        // every single-rule closure satisfies that rule and adds nothing
        // to an already closed model
        let m = model(
            &["1", "2", "3", "4"],
            &[(&["1"], &["2", "4"], &["3"]), (&["1"], &["3"], &["2"]), (&["2"], &["3"], &[])],
        );
        for ax in Axiom::ALL {
            let c = closure(&m, &[ax]).unwrap();
            assert!(check_axiom(&c, ax).is_empty(), "{ax:?}");
        }
    }

    /// Repeatedly adds every conclusion `check_axiom` reports missing.
    fn naive_closure(m: &IndependenceModel, axioms: &[Axiom]) -> IndependenceModel {
        let mut m = m.clone();
        loop {
            let missing: Vec<Triple> = axioms.iter().flat_map(|&ax| check_axiom(&m, ax)).map(|v| v.missing).collect();
            if missing.is_empty() {
                return m;
            }
            for t in missing {
                m.insert(t);
            }
        }
    }

    #[test]
    fn worklist_matches_naive_fixpoint() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let labels = ["1", "2", "3", "4"];
        let subsets: [&[Axiom]; 5] = [
            &Axiom::ALL,
            &[Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4],
            &[Axiom::S5],
            &[Axiom::S6, Axiom::S1],
            &[Axiom::S4],
        ];
        for round in 0..40 {
            let mut m = IndependenceModel::empty(&labels).unwrap();
            for _ in 0..rng.gen_range(1..4) {
                let mut t = Triple::raw(NodeSet::empty(), NodeSet::empty(), NodeSet::empty());
                for v in 0..4usize {
                    match rng.gen_range(0..4) {
                        0 => t.a.insert(v.into()),
                        1 => t.b.insert(v.into()),
                        2 => t.c.insert(v.into()),
                        _ => false,
                    };
                }
                m.insert(t);
            }
            let ax = subsets[round % subsets.len()];
            assert_eq!(closure(&m, ax).unwrap(), naive_closure(&m, ax), "round {round}");
        }
    }

    #[test]
    fn size_limit() {
        let m = IndependenceModel::empty(&["1", "2", "3", "4", "5", "6", "7"]).unwrap();
        assert!(matches!(closure(&m, &Axiom::ALL), Err(Error::SizeLimit { .. })));
        assert!(closure_with(&m, &[Axiom::S1], 7).is_ok());
    }
}
