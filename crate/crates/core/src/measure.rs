//! Probability measures on finite spaces.
//!
//! A [`ProbabilityMeasure`] is given by one exact weight per outcome, so
//! additivity holds by construction; [`validate_measure`] still reports on
//! all three axioms. Claimed measures given as an event → probability table
//! are audited by [`audit_event_table`], where additivity is a real check.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::event_algebra::{self, Event, SampleSpace, SigmaAlgebra};
use crate::rational::{format_rational, Rational};

/// Default bound on the family size accepted by [`inclusion_exclusion`].
pub const DEFAULT_INCLUSION_EXCLUSION_CAP: usize = 20;

/// Spaces up to this size get exhaustive additivity checks.
const EXHAUSTIVE_ADDITIVITY_OUTCOMES: usize = 6;
const SAMPLED_ADDITIVITY_PAIRS: usize = 4096;
const ADDITIVITY_SEED: u64 = 0x5eed_add1;

#[derive(Clone)]
pub struct ProbabilityMeasure {
    space: SampleSpace,
    weights: Arc<[Rational]>,
    // weights over their least common denominator, for fast exact sums
    scaled: Arc<[BigInt]>,
    common_denom: BigInt,
}

impl fmt::Debug for ProbabilityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(format_rational).collect();
        f.debug_struct("ProbabilityMeasure").field("weights", &w).finish()
    }
}

impl ProbabilityMeasure {
    /// Validated construction: fails with [`Error::InvalidMeasure`] unless the
    /// weights are nonnegative and sum to exactly one.
    pub fn new(space: &SampleSpace, weights: Vec<Rational>) -> Result<Self> {
        let report = validate_weights(space, &weights);
        if !report.is_valid() {
            return Err(Error::InvalidMeasure(Box::new(report)));
        }
        Ok(Self::from_weights_unchecked(space, weights))
    }

    pub fn uniform(space: &SampleSpace) -> Self {
        let w = Rational::new(BigInt::one(), BigInt::from(space.len()));
        Self::from_weights_unchecked(space, vec![w; space.len()])
    }

    /// Normalizes nonnegative integer weights by their exact sum.
    pub fn from_integer_weights(space: &SampleSpace, weights: &[u64]) -> Result<Self> {
        let total: BigInt = weights.iter().map(|&w| BigInt::from(w)).sum();
        if total.is_zero() {
            return Err(Error::InvalidMeasure(Box::new(validate_weights(
                space,
                &vec![Rational::zero(); weights.len()],
            ))));
        }
        let w = weights
            .iter()
            .map(|&w| Rational::new(BigInt::from(w), total.clone()))
            .collect();
        Self::new(space, w)
    }

    /// Builds a measure without checking the axioms.
    ///
    /// Exists for fault injection: the theorem suite must be able to see an
    /// invalid measure to prove it notices one. Panics if the weight count
    /// differs from the outcome count.
    pub fn from_weights_unchecked(space: &SampleSpace, weights: Vec<Rational>) -> Self {
        assert_eq!(weights.len(), space.len(), "one weight per outcome");
        let common_denom = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled: Vec<BigInt> = weights
            .iter()
            .map(|w| w.numer() * (&common_denom / w.denom()))
            .collect();
        ProbabilityMeasure {
            space: space.clone(),
            weights: weights.into(),
            scaled: scaled.into(),
            common_denom,
        }
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    fn check(&self, event: &Event) -> Result<()> {
        self.space.check(event)
    }

    fn scaled_mass(&self, event: &Event) -> BigInt {
        event.outcomes().map(|i| &self.scaled[i]).sum()
    }

    pub(crate) fn prob_unchecked(&self, event: &Event) -> Rational {
        Rational::new(self.scaled_mass(event), self.common_denom.clone())
    }
}

/// Exact probability of an event: the sum of its atom weights.
pub fn prob(m: &ProbabilityMeasure, a: &Event) -> Result<Rational> {
    m.check(a)?;
    Ok(m.prob_unchecked(a))
}

/// Status of the three axioms for a measure or a claimed probability table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub nonneg_ok: bool,
    pub normalized_ok: bool,
    pub additivity_ok: bool,
    pub witnesses: Vec<String>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.nonneg_ok && self.normalized_ok && self.additivity_ok
    }

    fn status(ok: bool) -> &'static str {
        if ok {
            "ok"
        } else {
            "violated"
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "non-negativity: {}", Self::status(self.nonneg_ok))?;
        writeln!(f, "normalization: {}", Self::status(self.normalized_ok))?;
        write!(f, "additivity: {}", Self::status(self.additivity_ok))?;
        for w in &self.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

/// Axiom report for a measure.
pub fn validate_measure(m: &ProbabilityMeasure) -> AxiomReport {
    let mut report = validate_weights(&m.space, &m.weights);
    if let Some(w) = check_atom_additivity(m) {
        report.additivity_ok = false;
        report.witnesses.push(w);
    }
    report
}

/// Non-negativity and normalization of raw atom weights.
pub fn validate_weights(space: &SampleSpace, weights: &[Rational]) -> AxiomReport {
    let mut witnesses = Vec::new();
    let mut nonneg_ok = true;
    if weights.len() != space.len() {
        witnesses.push(format!(
            "{} weights given for {} outcomes",
            weights.len(),
            space.len()
        ));
    }
    for (i, w) in weights.iter().enumerate() {
        if w.is_negative() {
            nonneg_ok = false;
            let label = space.outcomes().get(i).map(String::as_str).unwrap_or("?");
            witnesses.push(format!(
                "outcome {} (`{label}`) has negative weight {}",
                i + 1,
                format_rational(w)
            ));
        }
    }
    let sum: Rational = weights.iter().sum();
    let normalized_ok = sum.is_one() && weights.len() == space.len();
    if !sum.is_one() {
        witnesses.push(format!("weights sum to {}, not 1", format_rational(&sum)));
    }
    AxiomReport {
        nonneg_ok,
        normalized_ok,
        additivity_ok: true,
        witnesses,
    }
}

/// Disjoint pairs to try: all of them on small spaces, a fixed-seed sample otherwise.
fn disjoint_pairs(space: &SampleSpace) -> Vec<(Event, Event)> {
    let n = space.len();
    if n <= EXHAUSTIVE_ADDITIVITY_OUTCOMES {
        let mut out = Vec::new();
        // each outcome goes to the left event, the right event, or neither
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut c = code;
            for i in 0..n {
                match c % 3 {
                    1 => left.push(i),
                    2 => right.push(i),
                    _ => {}
                }
                c /= 3;
            }
            out.push((
                space.event_from_indices(left).expect("in range"),
                space.event_from_indices(right).expect("in range"),
            ));
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ADDITIVITY_SEED);
        (0..SAMPLED_ADDITIVITY_PAIRS)
            .map(|_| {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for i in 0..n {
                    match rng.random_range(0u32..3) {
                        1 => left.push(i),
                        2 => right.push(i),
                        _ => {}
                    }
                }
                (
                    space.event_from_indices(left).expect("in range"),
                    space.event_from_indices(right).expect("in range"),
                )
            })
            .collect()
    }
}

fn check_atom_additivity(m: &ProbabilityMeasure) -> Option<String> {
    for (a, b) in disjoint_pairs(&m.space) {
        let joint = m.prob_unchecked(&a.union_unchecked(&b));
        let split = m.prob_unchecked(&a) + m.prob_unchecked(&b);
        if joint != split {
            return Some(format!(
                "P({} ∪ {}) = {} but P({}) + P({}) = {}",
                m.space.format_event(&a),
                m.space.format_event(&b),
                format_rational(&joint),
                m.space.format_event(&a),
                m.space.format_event(&b),
                format_rational(&split)
            ));
        }
    }
    None
}

/// Audits an externally claimed probability table.
///
/// Every entry must be nonnegative, Ω must be present with probability 1, and
/// whenever two disjoint tabulated events have a tabulated union, the union's
/// probability must be the sum. Pairs are checked exhaustively on spaces of
/// up to six outcomes and sampled with a fixed seed beyond that.
pub fn audit_event_table(space: &SampleSpace, table: &[(Event, Rational)]) -> Result<AxiomReport> {
    let mut witnesses = Vec::new();
    let mut nonneg_ok = true;
    let mut additivity_ok = true;
    let mut lookup: HashMap<&Event, &Rational> = HashMap::new();
    for (e, p) in table {
        space.check(e)?;
        if p.is_negative() {
            nonneg_ok = false;
            witnesses.push(format!(
                "P({}) = {} is negative",
                space.format_event(e),
                format_rational(p)
            ));
        }
        if let Some(prev) = lookup.insert(e, p) {
            if prev != p {
                additivity_ok = false;
                witnesses.push(format!(
                    "P({}) is claimed as both {} and {}",
                    space.format_event(e),
                    format_rational(prev),
                    format_rational(p)
                ));
            }
        }
    }

    let normalized_ok = match lookup.get(&space.full()) {
        Some(p) if p.is_one() => true,
        Some(p) => {
            witnesses.push(format!("P(Ω) = {}, not 1", format_rational(p)));
            false
        }
        None => {
            witnesses.push("the table has no entry for Ω".to_string());
            false
        }
    };

    let entries: Vec<(&Event, &Rational)> = table.iter().map(|(e, p)| (e, p)).collect();
    let mut check_pair = |a: &Event, pa: &Rational, b: &Event, pb: &Rational| -> bool {
        if !a.disjoint_unchecked(b) {
            return true;
        }
        let u = a.union_unchecked(b);
        match lookup.get(&u) {
            Some(&pu) if *pu != pa + pb => {
                witnesses.push(format!(
                    "{} and {} are disjoint but P(union) = {} while P({}) + P({}) = {}",
                    space.format_event(a),
                    space.format_event(b),
                    format_rational(pu),
                    space.format_event(a),
                    space.format_event(b),
                    format_rational(&(pa + pb))
                ));
                false
            }
            _ => true,
        }
    };
    if space.len() <= EXHAUSTIVE_ADDITIVITY_OUTCOMES {
        'outer: for (i, (a, pa)) in entries.iter().enumerate() {
            for (b, pb) in &entries[i..] {
                if !check_pair(a, pa, b, pb) {
                    additivity_ok = false;
                    break 'outer;
                }
            }
        }
    } else if !entries.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(ADDITIVITY_SEED);
        for _ in 0..SAMPLED_ADDITIVITY_PAIRS {
            let (a, pa) = entries[rng.random_range(0..entries.len() as u64) as usize];
            let (b, pb) = entries[rng.random_range(0..entries.len() as u64) as usize];
            if !check_pair(a, pa, b, pb) {
                additivity_ok = false;
                break;
            }
        }
    }

    Ok(AxiomReport {
        nonneg_ok,
        normalized_ok,
        additivity_ok,
        witnesses,
    })
}

/// `1 − P(A)`.
pub fn complement_prob(m: &ProbabilityMeasure, a: &Event) -> Result<Rational> {
    Ok(Rational::one() - prob(m, a)?)
}

/// `P(A) + P(B) − P(A ∩ B)`.
pub fn union_prob_pair(m: &ProbabilityMeasure, a: &Event, b: &Event) -> Result<Rational> {
    let both = event_algebra::intersection(a, b)?;
    Ok(prob(m, a)? + prob(m, b)? - prob(m, &both)?)
}

/// Result of the alternating-sum expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionExclusion {
    pub total: Rational,
    /// Signed contribution of the index subsets of each size: entry `k` holds
    /// `(−1)^k` times the sum over all `(k+1)`-element intersections.
    pub layers: Vec<Rational>,
}

pub fn inclusion_exclusion(m: &ProbabilityMeasure, events: &[Event]) -> Result<InclusionExclusion> {
    inclusion_exclusion_with_cap(m, events, DEFAULT_INCLUSION_EXCLUSION_CAP)
}

/// Sums `(−1)^{|S|−1} P(⋂_{i∈S} A_i)` over every nonempty index subset `S`.
///
/// Subsets are visited as bit masks in increasing order. The intersection for
/// a mask is the cached intersection of the mask without its highest bit,
/// intersected with that event.
pub fn inclusion_exclusion_with_cap(
    m: &ProbabilityMeasure,
    events: &[Event],
    cap: usize,
) -> Result<InclusionExclusion> {
    event_algebra::check_family(events)?;
    m.check(&events[0])?;
    let n = events.len();
    if n > cap {
        return Err(Error::SizeLimit {
            what: "inclusion-exclusion family",
            requested: n,
            limit: cap,
        });
    }

    let words = events[0].space_len().div_ceil(64);
    let masks: Vec<Vec<u64>> = events
        .iter()
        .map(|e| {
            let mut w = vec![0u64; words];
            for i in e.outcomes() {
                w[i / 64] |= 1 << (i % 64);
            }
            w
        })
        .collect();

    let subsets = 1usize << n;
    let mut cache = vec![0u64; subsets * words];
    let mut layer_sums = vec![BigInt::zero(); n];
    for mask in 1..subsets {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        for w in 0..words {
            cache[mask * words + w] = if rest == 0 {
                masks[top][w]
            } else {
                cache[rest * words + w] & masks[top][w]
            };
        }
        let mut mass = BigInt::zero();
        for w in 0..words {
            let mut bits = cache[mask * words + w];
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                mass += &m.scaled[w * 64 + b];
                bits &= bits - 1;
            }
        }
        layer_sums[mask.count_ones() as usize - 1] += mass;
    }

    let layers: Vec<Rational> = layer_sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            let signed = if k % 2 == 0 { s } else { -s };
            Rational::new(signed, m.common_denom.clone())
        })
        .collect();
    let total = layers.iter().sum();
    Ok(InclusionExclusion { total, layers })
}

/// `Σ P(A_i)` for a pairwise disjoint family.
pub fn disjoint_union_prob(m: &ProbabilityMeasure, events: &[Event]) -> Result<Rational> {
    if let Some((first, second)) = event_algebra::first_overlap(events)? {
        return Err(Error::NotDisjoint { first, second });
    }
    events.iter().map(|e| prob(m, e)).sum()
}

/// The triple of sample space, σ-algebra and measure.
#[derive(Debug, Clone)]
pub struct ProbabilitySpace {
    space: SampleSpace,
    algebra: SigmaAlgebra,
    measure: ProbabilityMeasure,
}

impl ProbabilitySpace {
    /// Checks that all three parts share one space and that the measure is valid.
    pub fn new(space: SampleSpace, algebra: SigmaAlgebra, measure: ProbabilityMeasure) -> Result<Self> {
        if algebra.space_id() != space.id() || measure.space() != &space {
            return Err(Error::SpaceMismatch);
        }
        let report = validate_measure(&measure);
        if !report.is_valid() {
            return Err(Error::InvalidMeasure(Box::new(report)));
        }
        Ok(ProbabilitySpace {
            space,
            algebra,
            measure,
        })
    }

    /// Pairs a measure with the σ-algebra generated by the given events.
    pub fn generated_by(measure: ProbabilityMeasure, events: &[Event]) -> Result<Self> {
        let space = measure.space().clone();
        let algebra = event_algebra::generate_sigma_algebra(&space, events)?;
        Self::new(space, algebra, measure)
    }

    /// Skips measure validation; for fault-injection tests only.
    pub fn new_unchecked(measure: ProbabilityMeasure, events: &[Event]) -> Result<Self> {
        let space = measure.space().clone();
        let algebra = event_algebra::generate_sigma_algebra(&space, events)?;
        Ok(ProbabilitySpace {
            space,
            algebra,
            measure,
        })
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn algebra(&self) -> &SigmaAlgebra {
        &self.algebra
    }

    pub fn measure(&self) -> &ProbabilityMeasure {
        &self.measure
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event_algebra::{complement, intersection, union, union_all};
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn die() -> (SampleSpace, ProbabilityMeasure) {
        let s = SampleSpace::numbered(6).unwrap();
        let m = ProbabilityMeasure::uniform(&s);
        (s, m)
    }

    fn ev(s: &SampleSpace, labels: &[&str]) -> Event {
        s.event_from_labels(labels).unwrap()
    }

    fn weights(ws: &[(i64, i64)]) -> Vec<Rational> {
        ws.iter().map(|&(n, d)| ratio(n, d)).collect()
    }

    #[test]
    fn prob_on_a_fair_die() {
        let (s, m) = die();
        assert_eq!(prob(&m, &ev(&s, &["2", "4", "6"])).unwrap(), ratio(1, 2));
        assert_eq!(prob(&m, &s.empty()).unwrap(), ratio(0, 1));
        assert_eq!(prob(&m, &s.full()).unwrap(), ratio(1, 1));
        let other = SampleSpace::numbered(6).unwrap();
        assert_eq!(prob(&m, &other.full()), Err(Error::SpaceMismatch));
    }

    #[test]
    fn validation_reports() {
        let s = SampleSpace::new(["a", "b", "c"]).unwrap();
        let ok = validate_weights(&s, &weights(&[(1, 2), (1, 3), (1, 6)]));
        assert!(ok.is_valid());
        assert!(ok.witnesses.is_empty());

        let neg = ProbabilityMeasure::from_weights_unchecked(&s, weights(&[(1, 2), (-1, 4), (3, 4)]));
        let r = validate_measure(&neg);
        assert!(!r.nonneg_ok && r.normalized_ok && r.additivity_ok);
        assert_eq!(r.witnesses, vec!["outcome 2 (`b`) has negative weight -1/4"]);

        let big = ProbabilityMeasure::from_weights_unchecked(&s, weights(&[(1, 2), (1, 2), (1, 2)]));
        let r = validate_measure(&big);
        assert!(r.nonneg_ok && !r.normalized_ok);
        assert_eq!(r.witnesses, vec!["weights sum to 3/2, not 1"]);

        let err = ProbabilityMeasure::new(&s, weights(&[(1, 2), (1, 2), (1, 2)])).unwrap_err();
        assert!(matches!(err, Error::InvalidMeasure(_)));
    }

    #[test]
    fn zero_weights_are_allowed() {
        let s = SampleSpace::numbered(3).unwrap();
        let m = ProbabilityMeasure::new(&s, weights(&[(1, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(prob(&m, &ev(&s, &["2", "3"])).unwrap(), ratio(0, 1));
        assert!(ProbabilityMeasure::from_integer_weights(&s, &[0, 0, 0]).is_err());
        let m = ProbabilityMeasure::from_integer_weights(&s, &[1, 2, 3]).unwrap();
        assert_eq!(m.weights(), &weights(&[(1, 6), (1, 3), (1, 2)])[..]);
    }

    #[test]
    fn complement_examples() {
        let (s, m) = die();
        assert_eq!(
            complement_prob(&m, &ev(&s, &["2", "4", "6"])).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(complement_prob(&m, &s.full()).unwrap(), ratio(0, 1));
        let t = SampleSpace::numbered(3).unwrap();
        let m = ProbabilityMeasure::new(&t, weights(&[(1, 4), (1, 4), (1, 2)])).unwrap();
        assert_eq!(complement_prob(&m, &ev(&t, &["3"])).unwrap(), ratio(1, 2));
    }

    #[test]
    fn union_pair_examples() {
        let (s, m) = die();
        let a = ev(&s, &["2", "4", "6"]);
        let b = ev(&s, &["1", "2", "3"]);
        assert_eq!(union_prob_pair(&m, &a, &b).unwrap(), ratio(5, 6));
        // direct summation over {1,2,3,4,6}
        assert_eq!(
            prob(&m, &ev(&s, &["1", "2", "3", "4", "6"])).unwrap(),
            ratio(5, 6)
        );
        let odd = ev(&s, &["1", "3", "5"]);
        assert_eq!(
            union_prob_pair(&m, &a, &odd).unwrap(),
            prob(&m, &a).unwrap() + prob(&m, &odd).unwrap()
        );
        assert_eq!(union_prob_pair(&m, &a, &a).unwrap(), prob(&m, &a).unwrap());
    }

    #[test]
    fn inclusion_exclusion_layers() {
        let (s, m) = die();
        let fam = [ev(&s, &["1", "2"]), ev(&s, &["2", "3"]), ev(&s, &["3", "4"])];
        let ie = inclusion_exclusion(&m, &fam).unwrap();
        assert_eq!(ie.layers, vec![ratio(1, 1), ratio(-1, 3), ratio(0, 1)]);
        assert_eq!(ie.total, ratio(2, 3));
        assert_eq!(prob(&m, &ev(&s, &["1", "2", "3", "4"])).unwrap(), ratio(2, 3));

        let one = inclusion_exclusion(&m, &fam[..1]).unwrap();
        assert_eq!(one.total, prob(&m, &fam[0]).unwrap());
        let two = inclusion_exclusion(&m, &fam[..2]).unwrap();
        assert_eq!(two.total, union_prob_pair(&m, &fam[0], &fam[1]).unwrap());

        assert_eq!(inclusion_exclusion(&m, &[]), Err(Error::EmptyFamily));
        let err = inclusion_exclusion_with_cap(&m, &fam, 2).unwrap_err();
        assert!(matches!(
            err,
            Error::SizeLimit {
                requested: 3,
                limit: 2,
                ..
            }
        ));
    }

    #[test]
    fn inclusion_exclusion_spans_multiple_words() {
        let s = SampleSpace::numbered(130).unwrap();
        let m = ProbabilityMeasure::uniform(&s);
        let fam = [
            s.event_from_indices(0..70).unwrap(),
            s.event_from_indices(60..128).unwrap(),
            s.event_from_indices([5, 65, 129]).unwrap(),
        ];
        let ie = inclusion_exclusion(&m, &fam).unwrap();
        assert_eq!(ie.total, prob(&m, &union_all(&fam).unwrap()).unwrap());
    }

    #[test]
    fn disjoint_union_examples() {
        let (s, m) = die();
        let fam = [ev(&s, &["1", "2"]), ev(&s, &["3", "4"])];
        assert_eq!(disjoint_union_prob(&m, &fam).unwrap(), ratio(2, 3));
        let part = [ev(&s, &["1", "2"]), ev(&s, &["3", "4"]), ev(&s, &["5", "6"])];
        assert_eq!(disjoint_union_prob(&m, &part).unwrap(), ratio(1, 1));
        let bad = [ev(&s, &["1", "2"]), ev(&s, &["2", "3"])];
        assert_eq!(
            disjoint_union_prob(&m, &bad),
            Err(Error::NotDisjoint { first: 0, second: 1 })
        );
    }

    #[test]
    fn event_table_audit() {
        let s = SampleSpace::numbered(2).unwrap();
        let e = |m: &str| s.event_from_mask(m).unwrap();
        let good = vec![
            (e("00"), ratio(0, 1)),
            (e("10"), ratio(1, 3)),
            (e("01"), ratio(2, 3)),
            (e("11"), ratio(1, 1)),
        ];
        assert!(audit_event_table(&s, &good).unwrap().is_valid());

        let mut bad = good.clone();
        bad[3].1 = ratio(5, 6);
        let r = audit_event_table(&s, &bad).unwrap();
        assert!(!r.normalized_ok);
        assert!(!r.additivity_ok);

        let mut neg = good.clone();
        neg[1].1 = ratio(-1, 3);
        neg[2].1 = ratio(4, 3);
        let r = audit_event_table(&s, &neg).unwrap();
        assert!(!r.nonneg_ok && r.normalized_ok && r.additivity_ok);

        let nonadditive = vec![
            (e("10"), ratio(1, 2)),
            (e("01"), ratio(1, 2)),
            (e("11"), ratio(1, 1)),
            (e("00"), ratio(1, 4)),
        ];
        let r = audit_event_table(&s, &nonadditive).unwrap();
        assert!(!r.additivity_ok);

        let missing = vec![(e("10"), ratio(1, 2))];
        assert!(!audit_event_table(&s, &missing).unwrap().normalized_ok);
    }

    #[test]
    fn event_table_audit_samples_large_spaces() {
        let s = SampleSpace::numbered(8).unwrap();
        let m = ProbabilityMeasure::uniform(&s);
        let table: Vec<(Event, Rational)> = s
            .all_events()
            .unwrap()
            .into_iter()
            .map(|e| {
                let p = prob(&m, &e).unwrap();
                (e, p)
            })
            .collect();
        assert!(audit_event_table(&s, &table).unwrap().is_valid());
    }

    #[test]
    fn probability_space_requires_one_space() {
        let (s, m) = die();
        let alg = SigmaAlgebra::power_set(&s).unwrap();
        assert!(ProbabilitySpace::new(s.clone(), alg.clone(), m.clone()).is_ok());
        let other = SampleSpace::numbered(6).unwrap();
        assert_eq!(
            ProbabilitySpace::new(other, alg, m).unwrap_err(),
            Error::SpaceMismatch
        );
    }

    fn measure_and_events(max: usize) -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
        (1..=max).prop_flat_map(|n| {
            (
                proptest::collection::vec(0u64..=1000, n)
                    .prop_filter("nonzero total", |w| w.iter().any(|&x| x > 0)),
                proptest::collection::vec(0u64..(1 << n), 1..=10),
            )
        })
    }

    proptest! {
        #[test]
        fn combination_identities((ws, bits) in measure_and_events(8)) {
            let s = SampleSpace::numbered(ws.len()).unwrap();
            let m = ProbabilityMeasure::from_integer_weights(&s, &ws).unwrap();
            let events: Vec<Event> = bits.iter().map(|&b| s.event_from_bits(b)).collect();
            prop_assert_eq!(prob(&m, &s.empty()).unwrap(), Rational::zero());
            for a in &events {
                let pa = prob(&m, a).unwrap();
                prop_assert!(pa >= Rational::zero() && pa <= Rational::one());
                prop_assert_eq!(complement_prob(&m, a).unwrap(), prob(&m, &complement(a)).unwrap());
                for b in &events {
                    prop_assert_eq!(
                        union_prob_pair(&m, a, b).unwrap(),
                        prob(&m, &union(a, b).unwrap()).unwrap()
                    );
                    let ab = intersection(a, b).unwrap();
                    prop_assert!(prob(&m, &ab).unwrap() <= pa.clone());
                }
            }
            let ie = inclusion_exclusion(&m, &events).unwrap();
            prop_assert_eq!(ie.total, prob(&m, &union_all(&events).unwrap()).unwrap());
        }
    }
}
