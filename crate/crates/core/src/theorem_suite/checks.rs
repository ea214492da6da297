use std::collections::HashSet;

use num_traits::{One, Zero};

use super::report::{Counterexample, VerificationReport};
use super::TheoremId;
use crate::conditional::{
    bayes, bayes_table, chain_rule, cond_addition, cond_prob, is_independent, is_mutually_independent,
    posteriors, total_probability, BayesTable,
};
use crate::error::Result;
use crate::event_algebra::{
    complement, difference, intersection, intersection_all, is_pme_family, union, union_all, Event,
};
use crate::measure::{
    complement_prob, disjoint_union_prob, inclusion_exclusion, prob, union_prob_pair, ProbabilityMeasure,
    ProbabilitySpace,
};
use crate::rational::{format_rational, Rational};

/// Longest prefix family drawn from the sampled events.
const MAX_FAMILY: usize = 6;

/// Runs every checker on `ps` over the sampled `events`.
///
/// Families, partitions and hypothesis-satisfying pairs are derived from the
/// sample; the space's whole outcome set is always added. Events from another
/// space are a caller bug and panic.
pub fn verify_all(ps: &ProbabilitySpace, events: &[Event]) -> VerificationReport {
    verify_with_partitions(ps, events, &[])
}

/// [`verify_all`] with extra partitions checked alongside the derived ones,
/// such as those named in a space file.
pub fn verify_with_partitions(
    ps: &ProbabilitySpace,
    events: &[Event],
    extra_partitions: &[Vec<Event>],
) -> VerificationReport {
    assert!(
        events
            .iter()
            .chain(extra_partitions.iter().flatten())
            .all(|e| ps.space().owns(e)),
        "verify_all: events must belong to the verified space"
    );
    let mut ctx = Ctx::new(ps.measure());
    let sample = Sample::build(ps, events, extra_partitions);
    ctx.run(&sample);
    let mut report = ctx.report;
    report.trials = 1;
    for e in &mut report.entries {
        e.settle();
    }
    report
}

struct Sample {
    omega: Event,
    events: Vec<Event>,
    families: Vec<Vec<Event>>,
    partitions: Vec<Vec<Event>>,
}

impl Sample {
    fn build(ps: &ProbabilitySpace, events: &[Event], extra_partitions: &[Vec<Event>]) -> Self {
        let space = ps.space();
        let omega = space.full();
        let mut sample: Vec<Event> = events.to_vec();
        if sample.is_empty() {
            sample.push(omega.clone());
        }

        let k = sample.len();
        let mut families: Vec<Vec<Event>> = (1..=k.min(MAX_FAMILY)).map(|n| sample[..n].to_vec()).collect();
        if k > 3 {
            for i in 0..k {
                families.push((0..3).map(|j| sample[(i + j) % k].clone()).collect());
            }
        }

        let mut partitions = vec![vec![omega.clone()], space.singletons()];
        for a in &sample {
            partitions.push(vec![a.clone(), complement(a)]);
        }
        for f in &families {
            // Venn cells keep only nonempty blocks; the difference chain plus
            // the uncovered rest may contain empty ones.
            partitions.push(venn_cells(f));
            let mut chain = difference_chain(f);
            chain.push(complement(&union_all(f).expect("one space")));
            partitions.push(chain);
        }
        partitions.extend(extra_partitions.iter().cloned());
        let mut seen = HashSet::new();
        partitions.retain(|p| seen.insert(p.clone()));

        Sample {
            omega,
            events: sample,
            families,
            partitions,
        }
    }
}

/// `A1, A2 \ A1, A3 \ (A1 ∪ A2), …`: pairwise exclusive with the same union.
fn difference_chain(family: &[Event]) -> Vec<Event> {
    let mut covered = family[0].clone();
    let mut chain = vec![family[0].clone()];
    for a in &family[1..] {
        chain.push(difference(a, &covered).expect("one space"));
        covered = union(&covered, a).expect("one space");
    }
    chain
}

/// Nonempty atoms of the algebra generated by `family`.
fn venn_cells(family: &[Event]) -> Vec<Event> {
    let mut cells = vec![family[0].clone(), complement(&family[0])];
    for a in &family[1..] {
        let not_a = complement(a);
        cells = cells
            .iter()
            .flat_map(|c| {
                [
                    intersection(c, a).expect("one space"),
                    intersection(c, &not_a).expect("one space"),
                ]
            })
            .collect();
        cells.retain(|c| !c.is_empty());
    }
    cells.retain(|c| !c.is_empty());
    cells
}

struct Ctx<'a> {
    m: &'a ProbabilityMeasure,
    report: VerificationReport,
}

impl<'a> Ctx<'a> {
    fn new(m: &'a ProbabilityMeasure) -> Self {
        Ctx {
            m,
            report: VerificationReport::empty(None),
        }
    }

    fn p(&self, a: &Event) -> Rational {
        prob(self.m, a).expect("events are checked up front")
    }

    fn skip(&mut self, id: TheoremId) {
        self.report.entries[id.index()].not_applicable += 1;
    }

    /// Records one instance. `outcome` is `Ok(true)` when the statement held;
    /// an engine error where the hypotheses hold also counts as a violation.
    fn record(
        &mut self,
        id: TheoremId,
        involved: &[&Event],
        outcome: Result<bool>,
        detail: impl FnOnce() -> String,
    ) {
        let entry = &mut self.report.entries[id.index()];
        entry.checks += 1;
        let failure = match outcome {
            Ok(true) => return,
            Ok(false) => detail(),
            Err(e) => format!("{}: engine error: {e}", detail()),
        };
        entry.violations += 1;
        if entry.counterexample.is_none() {
            entry.counterexample = Some(Counterexample {
                seed: None,
                trial: None,
                weights: self.m.weights().iter().map(format_rational).collect(),
                events: involved.iter().map(|e| e.mask_string()).collect(),
                detail: failure,
            });
        }
    }

    fn run(&mut self, s: &Sample) {
        self.t1(s);
        for f in &s.families {
            self.family_checks(f, &s.omega);
        }
        for p in &s.partitions {
            self.t3(p);
        }
        let empty = complement(&s.omega);
        for a in &s.events {
            self.single_checks(a);
            // Ω and ∅ are independent of everything, so this family always
            // meets the hypothesis
            self.mutual_check(&[a.clone(), s.omega.clone(), empty.clone()]);
        }
        for a in &s.events {
            for b in &s.events {
                self.pair_checks(s, a, b);
            }
        }
        for a in &s.events {
            for part in &s.partitions {
                self.partition_checks(a, part);
            }
        }
    }

    fn t1(&mut self, s: &Sample) {
        let empty = complement(&s.omega);
        let p = self.p(&empty);
        self.record(TheoremId::T1, &[&empty], Ok(p.is_zero()), || {
            format!("P(∅) = {}", format_rational(&p))
        });
    }

    fn t3(&mut self, part: &[Event]) {
        let total: Rational = part.iter().map(|c| self.p(c)).sum();
        let refs: Vec<&Event> = part.iter().collect();
        self.record(TheoremId::T3, &refs, Ok(total.is_one()), || {
            format!(
                "partition [{}] has total probability {}",
                part.iter()
                    .map(|c| c.mask_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                format_rational(&total)
            )
        });
    }

    fn family_checks(&mut self, f: &[Event], omega: &Event) {
        let refs: Vec<&Event> = f.iter().collect();
        let chain = difference_chain(f);
        let chain_refs: Vec<&Event> = chain.iter().collect();
        let u = union_all(f).expect("one space");
        let pu = self.p(&u);

        // T2: additivity over the exclusive chain
        let sum: Rational = chain.iter().map(|c| self.p(c)).sum();
        self.record(TheoremId::T2, &chain_refs, Ok(sum == pu), || {
            format!(
                "Σ P = {}, P(union) = {}",
                format_rational(&sum),
                format_rational(&pu)
            )
        });

        // L1: whole-family exclusivity against every subcollection
        for fam in [f, &chain[..]] {
            let brute = all_subcollections_exclusive(fam);
            let fast = is_pme_family(fam);
            let fam_refs: Vec<&Event> = fam.iter().collect();
            self.record(TheoremId::L1, &fam_refs, fast.map(|v| v == brute), || {
                format!("pairwise check disagrees with the subcollection check ({brute})")
            });
        }

        // T4
        match inclusion_exclusion(self.m, f) {
            Ok(ie) => {
                let mut ok = ie.total == pu;
                if f.len() == 2 {
                    let both = intersection(&f[0], &f[1]).expect("one space");
                    ok &= ie.layers == [self.p(&f[0]) + self.p(&f[1]), -self.p(&both)];
                }
                self.record(TheoremId::T4, &refs, Ok(ok), || {
                    format!(
                        "inclusion-exclusion gives {}, P(union) = {}",
                        format_rational(&ie.total),
                        format_rational(&pu)
                    )
                });
            }
            Err(e) => self.record(TheoremId::T4, &refs, Err(e), || "inclusion-exclusion".into()),
        }

        // L4
        let via = disjoint_union_prob(self.m, &chain);
        let got = via.as_ref().map(format_rational).unwrap_or_default();
        self.record(TheoremId::L4, &chain_refs, via.map(|v| v == pu), || {
            format!("disjoint sum {got}, P(union) = {}", format_rational(&pu))
        });

        // P3: conditional additivity given each positive member and the union
        for b in f.iter().chain([&u]) {
            if self.p(b).is_zero() {
                self.skip(TheoremId::P3);
                continue;
            }
            let lhs = cond_addition(self.m, &chain, b);
            let rhs = cond_prob(self.m, &u, b);
            let ok = match (lhs, rhs) {
                (Ok(l), Ok(r)) => Ok(l == r),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
            let mut involved = chain_refs.clone();
            involved.push(b);
            self.record(TheoremId::P3, &involved, ok, || {
                format!("conditional sum differs from P(union | {})", b.mask_string())
            });
        }

        // T5 on the family as given, then on a nested family whose prefixes
        // are positive whenever the first member is
        self.chain_rule_check(f);
        let nested: Vec<Event> = (0..f.len())
            .rev()
            .map(|n| union_all(&f[..=n]).expect("one space"))
            .collect();
        self.chain_rule_check(&nested);

        // L10 on the family itself and with Ω appended
        self.mutual_check(f);
        let mut with_omega = f.to_vec();
        with_omega.push(omega.clone());
        self.mutual_check(&with_omega);
    }

    fn chain_rule_check(&mut self, f: &[Event]) {
        let refs: Vec<&Event> = f.iter().collect();
        let prefix_positive =
            (1..f.len()).all(|n| !self.p(&intersection_all(&f[..n]).expect("one space")).is_zero());
        if !prefix_positive {
            self.skip(TheoremId::T5);
            return;
        }
        let joint = self.p(&intersection_all(f).expect("one space"));
        let r = chain_rule(self.m, f);
        let got = r
            .as_ref()
            .map(|c| format_rational(&c.product))
            .unwrap_or_default();
        self.record(TheoremId::T5, &refs, r.map(|c| c.product == joint), || {
            format!(
                "product of factors {got}, P(intersection) = {}",
                format_rational(&joint)
            )
        });
    }

    fn mutual_check(&mut self, f: &[Event]) {
        if f.len() < 2 {
            self.skip(TheoremId::L10);
            return;
        }
        match is_mutually_independent(self.m, f) {
            Ok(mi) if mi.holds => {
                let mut first_bad = None;
                'outer: for i in 0..f.len() {
                    for j in i + 1..f.len() {
                        if !is_independent(self.m, &f[i], &f[j]).expect("one space") {
                            first_bad = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let refs: Vec<&Event> = f.iter().collect();
                self.record(TheoremId::L10, &refs, Ok(first_bad.is_none()), || {
                    let (i, j) = first_bad.unwrap_or_default();
                    format!("mutually independent but members {i} and {j} are not independent")
                });
            }
            Ok(_) => self.skip(TheoremId::L10),
            Err(e) => {
                let refs: Vec<&Event> = f.iter().collect();
                self.record(TheoremId::L10, &refs, Err(e), || "mutual independence".into());
            }
        }
    }

    fn single_checks(&mut self, a: &Event) {
        let pa = self.p(a);
        let c = complement_prob(self.m, a);
        let direct = self.p(&complement(a));
        self.record(
            TheoremId::L5,
            &[a],
            c.map(|v| v == direct && v == Rational::one() - &pa),
            || {
                format!(
                    "P(~A) = {}, P(A) = {}",
                    format_rational(&direct),
                    format_rational(&pa)
                )
            },
        );
        let ok = !pa.is_negative_value() && pa <= Rational::one();
        self.record(TheoremId::L7, &[a], Ok(ok), || {
            format!("P(A) = {}", format_rational(&pa))
        });
    }

    fn pair_checks(&mut self, s: &Sample, a: &Event, b: &Event) {
        let ab = intersection(a, b).expect("one space");
        let a_or_b = union(a, b).expect("one space");
        let (pa, pb, pab, punion) = (self.p(a), self.p(b), self.p(&ab), self.p(&a_or_b));

        // L2
        let via = union_prob_pair(self.m, a, b);
        self.record(
            TheoremId::L2,
            &[a, b],
            via.map(|v| v == punion && v == &pa + &pb - &pab),
            || format!("P(A ∪ B) = {}", format_rational(&punion)),
        );

        // L3 on the sampled pair when disjoint, and on (A, B \ A) always
        if ab.is_empty() {
            self.record(TheoremId::L3, &[a, b], Ok(punion == &pa + &pb), || {
                format!(
                    "P(A ∪ B) = {}, P(A) + P(B) = {}",
                    format_rational(&punion),
                    format_rational(&(&pa + &pb))
                )
            });
        } else {
            self.skip(TheoremId::L3);
        }
        let b_minus_a = difference(b, a).expect("one space");
        let pbma = self.p(&b_minus_a);
        self.record(TheoremId::L3, &[a, &b_minus_a], Ok(punion == &pa + &pbma), || {
            format!(
                "P(A ∪ (B \\ A)) = {}, P(A) + P(B \\ A) = {}",
                format_rational(&punion),
                format_rational(&(&pa + &pbma))
            )
        });

        // L6 on the sampled pair when nested, and on A ∩ B ⊆ B, B ⊆ A ∪ B
        if a.is_subset(b).expect("one space") {
            self.record(TheoremId::L6, &[a, b], Ok(pa <= pb), || {
                format!(
                    "A ⊆ B but P(A) = {} > P(B) = {}",
                    format_rational(&pa),
                    format_rational(&pb)
                )
            });
        } else {
            self.skip(TheoremId::L6);
        }
        self.record(TheoremId::L6, &[&ab, b], Ok(pab <= pb), || {
            format!(
                "P(A ∩ B) = {} > P(B) = {}",
                format_rational(&pab),
                format_rational(&pb)
            )
        });
        self.record(TheoremId::L6, &[b, &a_or_b], Ok(pb <= punion), || {
            format!(
                "P(B) = {} > P(A ∪ B) = {}",
                format_rational(&pb),
                format_rational(&punion)
            )
        });

        if pb.is_zero() {
            self.skip(TheoremId::L8);
            self.skip(TheoremId::P1);
            self.skip(TheoremId::P2);
        } else {
            // L8
            let c = cond_prob(self.m, a, b);
            let ok = c.map(|v| {
                !v.is_negative_value() && v <= Rational::one() && !pab.is_negative_value() && pab <= pb
            });
            self.record(TheoremId::L8, &[a, b], ok, || {
                format!(
                    "P(A ∩ B) = {}, P(B) = {}",
                    format_rational(&pab),
                    format_rational(&pb)
                )
            });
            // P1 with A \ B, exclusive of B
            let excl = difference(a, b).expect("one space");
            let c = cond_prob(self.m, &excl, b);
            self.record(TheoremId::P1, &[&excl, b], c.map(|v| v.is_zero()), || {
                "P(A \\ B | B) is not 0".into()
            });
            // P2 with A ∪ B, containing B
            let c = cond_prob(self.m, &a_or_b, b);
            self.record(TheoremId::P2, &[&a_or_b, b], c.map(|v| v.is_one()), || {
                "P(A ∪ B | B) is not 1".into()
            });
        }

        // L9 and L11 on the sampled pair, (A, Ω) and (A, B \ A)
        let candidates = [(a, b), (a, &s.omega), (a, &b_minus_a)];
        for (x, y) in candidates {
            self.independence_checks(x, y);
        }
    }

    fn independence_checks(&mut self, a: &Event, b: &Event) {
        let (pa, pb) = (self.p(a), self.p(b));
        let positive = !pa.is_zero() && !pb.is_zero();
        let indep = is_independent(self.m, a, b).expect("one space");

        if indep && positive {
            let ab = cond_prob(self.m, a, b);
            let ba = cond_prob(self.m, b, a);
            let ok = match (ab, ba) {
                (Ok(x), Ok(y)) => Ok(x == pa && y == pb),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
            self.record(TheoremId::L9, &[a, b], ok, || {
                format!(
                    "independent with P(A) = {}, P(B) = {} but conditionals differ",
                    format_rational(&pa),
                    format_rational(&pb)
                )
            });
        } else {
            self.skip(TheoremId::L9);
        }

        let disjoint = intersection(a, b).expect("one space").is_empty();
        if disjoint && positive {
            self.record(TheoremId::L11, &[a, b], Ok(!indep), || {
                format!(
                    "exclusive events with P(A) = {}, P(B) = {} test independent",
                    format_rational(&pa),
                    format_rational(&pb)
                )
            });
        } else {
            self.skip(TheoremId::L11);
        }
    }

    fn partition_checks(&mut self, a: &Event, part: &[Event]) {
        let pa = self.p(a);
        let mut involved: Vec<&Event> = vec![a];
        involved.extend(part.iter());

        let tp = total_probability(self.m, a, part);
        let got = tp.as_ref().map(|t| format_rational(&t.total)).unwrap_or_default();
        self.record(TheoremId::L12, &involved, tp.map(|t| t.total == pa), || {
            format!("Σ P(A | Ci) P(Ci) = {got}, P(A) = {}", format_rational(&pa))
        });

        if pa.is_zero() {
            self.skip(TheoremId::T6);
            return;
        }
        let outcome = self.bayes_agrees(a, part);
        self.record(TheoremId::T6, &involved, outcome, || {
            "posteriors disagree with P(Ci | A) or do not sum to 1".into()
        });
    }

    /// Posteriors three ways: the evidence form, the prior/likelihood table,
    /// and the direct conditional P(Ci | A). The single-block form is
    /// checked on the first block of positive probability.
    fn bayes_agrees(&self, a: &Event, part: &[Event]) -> Result<bool> {
        let post = posteriors(self.m, a, part)?;
        let mut ok = post.iter().sum::<Rational>().is_one();
        let mut priors = Vec::with_capacity(part.len());
        let mut likelihoods = Vec::with_capacity(part.len());
        let mut single_checked = false;
        for (i, c) in part.iter().enumerate() {
            let pc = self.p(c);
            let direct = cond_prob(self.m, c, a)?;
            ok &= post[i] == direct;
            if pc.is_zero() {
                likelihoods.push(Rational::zero());
            } else {
                if !single_checked {
                    ok &= bayes(self.m, i, a, part)? == direct;
                    single_checked = true;
                }
                likelihoods.push(cond_prob(self.m, a, c)?);
            }
            priors.push(pc);
        }
        let table = bayes_table(&BayesTable::new(priors, likelihoods)?)?;
        Ok(ok && table == post)
    }
}

/// Brute force: every subcollection of two or more members has an empty
/// intersection.
fn all_subcollections_exclusive(f: &[Event]) -> bool {
    let n = f.len();
    (0u32..1 << n).filter(|s| s.count_ones() >= 2).all(|s| {
        let members: Vec<Event> = (0..n)
            .filter(|i| s & (1 << i) != 0)
            .map(|i| f[i].clone())
            .collect();
        intersection_all(&members).expect("one space").is_empty()
    })
}

trait SignExt {
    fn is_negative_value(&self) -> bool;
}

impl SignExt for Rational {
    fn is_negative_value(&self) -> bool {
        *self < Rational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event_algebra::SampleSpace;
    use crate::theorem_suite::Status;
    use num_bigint::BigInt;

    fn die() -> (ProbabilitySpace, Vec<Event>) {
        let space = SampleSpace::numbered(6).unwrap();
        let events = space.all_events().unwrap();
        let m = ProbabilityMeasure::uniform(&space);
        (ProbabilitySpace::generated_by(m, &events).unwrap(), events)
    }

    #[test]
    fn fair_die_with_every_event_holds_everywhere() {
        let (ps, events) = die();
        let r = verify_all(&ps, &events);
        for e in &r.entries {
            assert_eq!(e.status, Status::Holds, "{} {:?}", e.id, e.counterexample);
        }
        assert_eq!(r.trials, 1);
    }

    #[test]
    fn corrupted_measure_breaks_normalization() {
        let space = SampleSpace::numbered(6).unwrap();
        let sixth = Rational::new(BigInt::from(1), BigInt::from(6));
        let mut weights = vec![sixth; 6];
        weights[5] = Rational::zero();
        let m = ProbabilityMeasure::from_weights_unchecked(&space, weights);
        let events = vec![space.event_from_mask("110000").unwrap()];
        let ps = ProbabilitySpace::new_unchecked(m, &events).unwrap();
        let r = verify_all(&ps, &events);
        assert_eq!(r.status(TheoremId::T3), Status::Violated);
        let c = r.entry(TheoremId::T3).counterexample.as_ref().unwrap();
        assert_eq!(c.events, vec!["111111"]);
        assert_eq!(c.detail, "partition [111111] has total probability 5/6");
        assert!(c.seed.is_none());
    }

    #[test]
    fn single_outcome_space_has_no_exclusive_positive_pair() {
        let space = SampleSpace::numbered(1).unwrap();
        let events = space.all_events().unwrap();
        let ps = ProbabilitySpace::generated_by(ProbabilityMeasure::uniform(&space), &events).unwrap();
        let r = verify_all(&ps, &events);
        assert_eq!(r.status(TheoremId::L11), Status::NotApplicable);
        assert!(r.entry(TheoremId::L11).not_applicable > 0);
        assert!(r.is_clean());
        for e in &r.entries {
            assert_ne!(e.status, Status::Violated);
        }
    }

    #[test]
    fn venn_cells_partition_the_space() {
        let space = SampleSpace::numbered(5).unwrap();
        let f = vec![
            space.event_from_mask("11000").unwrap(),
            space.event_from_mask("01100").unwrap(),
        ];
        let cells = venn_cells(&f);
        let masks: Vec<String> = cells.iter().map(|c| c.mask_string()).collect();
        assert_eq!(masks, vec!["01000", "10000", "00100", "00011"]);
        assert!(crate::event_algebra::is_partition(&cells).unwrap());
    }

    #[test]
    fn brute_force_exclusivity() {
        let space = SampleSpace::numbered(3).unwrap();
        let a = space.event_from_mask("110").unwrap();
        let b = space.event_from_mask("011").unwrap();
        let c = space.event_from_mask("101").unwrap();
        // no point lies in all three, yet every pair overlaps
        assert!(!all_subcollections_exclusive(&[a.clone(), b.clone(), c.clone()]));
        assert!(intersection_all(&[a, b, c]).unwrap().is_empty());
    }
}
