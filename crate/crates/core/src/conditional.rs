//! Dependency among events: conditional probability, the product rule,
//! independence, total probability and Bayes' theorem.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::event_algebra::{self, Event};
use crate::measure::{prob, ProbabilityMeasure};
use crate::rational::{parse_rational, Rational};

/// Default bound on the family size for [`is_mutually_independent`].
pub const DEFAULT_MUTUAL_INDEPENDENCE_CAP: usize = 20;

/// `P(A ∩ B) / P(B)`, defined only when `P(B) > 0`.
pub fn cond_prob(m: &ProbabilityMeasure, a: &Event, b: &Event) -> Result<Rational> {
    let both = event_algebra::intersection(a, b)?;
    let pb = prob(m, b)?;
    if pb.is_zero() {
        return Err(Error::ConditionOnNull);
    }
    Ok(prob(m, &both)? / pb)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRule {
    pub product: Rational,
    /// `P(A_1)`, `P(A_2 | A_1)`, …, `P(A_n | A_1 ∩ … ∩ A_{n−1})`.
    pub factors: Vec<Rational>,
}

/// Product rule: `P(A_1) · P(A_2|A_1) · … · P(A_n|A_1∩…∩A_{n−1})`.
///
/// Every proper prefix intersection must have positive probability; the
/// first one that does not is reported as [`Error::PrefixNull`].
pub fn chain_rule(m: &ProbabilityMeasure, events: &[Event]) -> Result<ChainRule> {
    event_algebra::check_family(events)?;
    let first = &events[0];
    let mut factors = vec![prob(m, first)?];
    let mut prefix = first.clone();
    for (k, next) in events.iter().enumerate().skip(1) {
        let p_prefix = prob(m, &prefix)?;
        if p_prefix.is_zero() {
            return Err(Error::PrefixNull { length: k });
        }
        let joined = event_algebra::intersection(&prefix, next)?;
        factors.push(prob(m, &joined)? / p_prefix);
        prefix = joined;
    }
    let product = factors.iter().product();
    Ok(ChainRule { product, factors })
}

/// Statistical independence, decided by `P(A ∩ B) = P(A) · P(B)`.
///
/// The product form is symmetric and defined for null events, so any event
/// counts as independent of a probability-zero event.
pub fn is_independent(m: &ProbabilityMeasure, a: &Event, b: &Event) -> Result<bool> {
    let both = event_algebra::intersection(a, b)?;
    Ok(prob(m, &both)? == prob(m, a)? * prob(m, b)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutualIndependence {
    pub holds: bool,
    /// Indices of the lexicographically first sub-family whose intersection
    /// probability differs from the product of its probabilities.
    pub violating: Option<Vec<usize>>,
}

pub fn is_mutually_independent(m: &ProbabilityMeasure, events: &[Event]) -> Result<MutualIndependence> {
    is_mutually_independent_with_cap(m, events, DEFAULT_MUTUAL_INDEPENDENCE_CAP)
}

/// Checks the product identity on every sub-family of two or more events.
///
/// Sub-families are visited depth first, which is lexicographic order on
/// their sorted index lists; the running intersection and product are
/// carried down the recursion. A single event is vacuously independent.
pub fn is_mutually_independent_with_cap(
    m: &ProbabilityMeasure,
    events: &[Event],
    cap: usize,
) -> Result<MutualIndependence> {
    event_algebra::check_family(events)?;
    prob(m, &events[0])?;
    if events.len() > cap {
        return Err(Error::SizeLimit {
            what: "mutual independence family",
            requested: events.len(),
            limit: cap,
        });
    }
    let probs: Vec<Rational> = events.iter().map(|e| prob(m, e)).collect::<Result<_>>()?;

    fn visit(
        m: &ProbabilityMeasure,
        events: &[Event],
        probs: &[Rational],
        start: usize,
        chosen: &mut Vec<usize>,
        inter: &Event,
        product: &Rational,
    ) -> Option<Vec<usize>> {
        for i in start..events.len() {
            let inter_i = inter.intersection_unchecked(&events[i]);
            let product_i = product * &probs[i];
            chosen.push(i);
            if chosen.len() >= 2 && m.prob_unchecked(&inter_i) != product_i {
                return Some(chosen.clone());
            }
            if let Some(found) = visit(m, events, probs, i + 1, chosen, &inter_i, &product_i) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }

    let full = m.space().full();
    let violating = visit(m, events, &probs, 0, &mut Vec::new(), &full, &Rational::one());
    Ok(MutualIndependence {
        holds: violating.is_none(),
        violating,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalProbability {
    pub total: Rational,
    /// `P(A | C_i) · P(C_i)` per block; exactly zero for null blocks.
    pub terms: Vec<Rational>,
}

/// `Σ P(A | C_i) P(C_i)` over a partition.
///
/// Blocks of probability zero contribute an exact zero term: the term is read
/// as `P(A ∩ C_i)`, which vanishes with the block.
pub fn total_probability(m: &ProbabilityMeasure, a: &Event, partition: &[Event]) -> Result<TotalProbability> {
    ensure_partition(m, a, partition)?;
    let terms: Vec<Rational> = partition
        .iter()
        .map(|c| {
            let pc = prob(m, c)?;
            if pc.is_zero() {
                Ok(Rational::zero())
            } else {
                Ok(cond_prob(m, a, c)? * pc)
            }
        })
        .collect::<Result<_>>()?;
    let total = terms.iter().sum();
    Ok(TotalProbability { total, terms })
}

fn ensure_partition(m: &ProbabilityMeasure, a: &Event, partition: &[Event]) -> Result<()> {
    prob(m, a)?;
    if let Some(first) = partition.first() {
        event_algebra::intersection(a, first)?;
    }
    if !event_algebra::is_partition(partition)? {
        return Err(Error::NotAPartition);
    }
    Ok(())
}

/// Posterior `P(C_i | A)` computed as prior times likelihood over the evidence.
pub fn bayes(m: &ProbabilityMeasure, index: usize, a: &Event, partition: &[Event]) -> Result<Rational> {
    ensure_partition(m, a, partition)?;
    let block = partition.get(index).ok_or(Error::IndexOutOfRange {
        index,
        len: partition.len(),
    })?;
    if prob(m, a)?.is_zero() {
        return Err(Error::EvidenceNull);
    }
    let prior = prob(m, block)?;
    if prior.is_zero() {
        return Err(Error::PriorNull { index });
    }
    let numerator = cond_prob(m, a, block)? * prior;
    let evidence = total_probability(m, a, partition)?.total;
    Ok(numerator / evidence)
}

/// All posteriors at once, sharing one evidence sum. Null blocks get zero.
pub fn posteriors(m: &ProbabilityMeasure, a: &Event, partition: &[Event]) -> Result<Vec<Rational>> {
    let tp = total_probability(m, a, partition)?;
    if tp.total.is_zero() {
        return Err(Error::EvidenceNull);
    }
    Ok(tp.terms.iter().map(|t| t / &tp.total).collect())
}

/// `Σ P(A_i | B)` for a pairwise disjoint family.
pub fn cond_addition(m: &ProbabilityMeasure, events: &[Event], b: &Event) -> Result<Rational> {
    if let Some((first, second)) = event_algebra::first_overlap(events)? {
        return Err(Error::NotDisjoint { first, second });
    }
    events.iter().map(|a| cond_prob(m, a, b)).sum()
}

/// Priors `P(C_i)` and likelihoods `P(A | C_i)` given as plain numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BayesTable {
    priors: Vec<Rational>,
    likelihoods: Vec<Rational>,
}

impl BayesTable {
    pub fn new(priors: Vec<Rational>, likelihoods: Vec<Rational>) -> Result<Self> {
        if priors.len() != likelihoods.len() {
            return Err(Error::LengthMismatch {
                left: priors.len(),
                right: likelihoods.len(),
            });
        }
        if priors.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if let Some((i, p)) = priors.iter().enumerate().find(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidPrior(format!(
                "prior {} is negative ({})",
                i + 1,
                crate::rational::format_rational(p)
            )));
        }
        let sum: Rational = priors.iter().sum();
        if !sum.is_one() {
            return Err(Error::InvalidPrior(format!(
                "priors sum to {}, not 1",
                crate::rational::format_rational(&sum)
            )));
        }
        if let Some((i, l)) = likelihoods
            .iter()
            .enumerate()
            .find(|(_, l)| l.is_negative() || **l > Rational::one())
        {
            return Err(Error::InvalidLikelihood(format!(
                "likelihood {} is {}, outside [0, 1]",
                i + 1,
                crate::rational::format_rational(l)
            )));
        }
        Ok(BayesTable { priors, likelihoods })
    }

    pub fn priors(&self) -> &[Rational] {
        &self.priors
    }

    pub fn likelihoods(&self) -> &[Rational] {
        &self.likelihoods
    }

    pub fn len(&self) -> usize {
        self.priors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.priors.is_empty()
    }
}

/// Posteriors `prior_i · likelihood_i / Σ_j prior_j · likelihood_j`.
pub fn bayes_table(t: &BayesTable) -> Result<Vec<Rational>> {
    let joint: Vec<Rational> = t.priors.iter().zip(&t.likelihoods).map(|(p, l)| p * l).collect();
    let evidence: Rational = joint.iter().sum();
    if evidence.is_zero() {
        return Err(Error::EvidenceNull);
    }
    Ok(joint.into_iter().map(|j| j / &evidence).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Reads `prior,likelihood` rows. Blank lines, `#` comments and an optional
/// `prior,likelihood` header are skipped.
pub fn parse_bayes_table(text: &str) -> Result<BayesTable, TableParseError> {
    let mut priors = Vec::new();
    let mut likelihoods = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 2 {
            return Err(TableParseError::Syntax {
                line: line_no,
                message: format!("expected 2 columns, found {}", cols.len()),
            });
        }
        if priors.is_empty()
            && cols[0].eq_ignore_ascii_case("prior")
            && cols[1].eq_ignore_ascii_case("likelihood")
        {
            continue;
        }
        let parse = |s: &str| {
            parse_rational(s).map_err(|e| TableParseError::Syntax {
                line: line_no,
                message: e.to_string(),
            })
        };
        priors.push(parse(cols[0])?);
        likelihoods.push(parse(cols[1])?);
    }
    Ok(BayesTable::new(priors, likelihoods)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event_algebra::SampleSpace;
    use crate::rational::ratio;

    fn die() -> (SampleSpace, ProbabilityMeasure) {
        let s = SampleSpace::numbered(6).unwrap();
        let m = ProbabilityMeasure::uniform(&s);
        (s, m)
    }

    fn ev(s: &SampleSpace, labels: &[&str]) -> Event {
        s.event_from_labels(labels).unwrap()
    }

    #[test]
    fn conditional_examples() {
        let (s, m) = die();
        let a = ev(&s, &["2", "4", "6"]);
        let b = ev(&s, &["1", "2", "3"]);
        assert_eq!(cond_prob(&m, &a, &b).unwrap(), ratio(1, 3));
        let odd = ev(&s, &["1", "3", "5"]);
        assert_eq!(cond_prob(&m, &a, &odd).unwrap(), ratio(0, 1));
        let sub = ev(&s, &["2", "4"]);
        assert_eq!(cond_prob(&m, &a, &sub).unwrap(), ratio(1, 1));
        assert_eq!(cond_prob(&m, &a, &s.empty()), Err(Error::ConditionOnNull));
    }

    #[test]
    fn chain_rule_examples() {
        let (s, m) = die();
        let fam = [
            ev(&s, &["1", "2", "3", "4"]),
            ev(&s, &["2", "3", "4"]),
            ev(&s, &["3", "4"]),
        ];
        let c = chain_rule(&m, &fam).unwrap();
        assert_eq!(c.factors, vec![ratio(2, 3), ratio(3, 4), ratio(2, 3)]);
        assert_eq!(c.product, ratio(1, 3));
        assert_eq!(c.product, prob(&m, &ev(&s, &["3", "4"])).unwrap());

        assert_eq!(chain_rule(&m, &fam[..1]).unwrap().product, ratio(2, 3));

        let c = chain_rule(&m, &[ev(&s, &["1", "2"]), ev(&s, &["5", "6"])]).unwrap();
        assert_eq!(c.factors, vec![ratio(1, 3), ratio(0, 1)]);
        assert_eq!(c.product, ratio(0, 1));

        let err = chain_rule(&m, &[ev(&s, &["1"]), ev(&s, &["2"]), ev(&s, &["3"])]).unwrap_err();
        assert_eq!(err, Error::PrefixNull { length: 2 });
        assert_eq!(chain_rule(&m, &[]), Err(Error::EmptyFamily));
    }

    fn coins() -> (SampleSpace, ProbabilityMeasure) {
        let s = SampleSpace::new(["HH", "HT", "TH", "TT"]).unwrap();
        let m = ProbabilityMeasure::uniform(&s);
        (s, m)
    }

    #[test]
    fn independence_examples() {
        let (s, m) = coins();
        let first_h = ev(&s, &["HH", "HT"]);
        let second_h = ev(&s, &["HH", "TH"]);
        assert!(is_independent(&m, &first_h, &second_h).unwrap());
        let first_t = ev(&s, &["TH", "TT"]);
        assert!(!is_independent(&m, &first_h, &first_t).unwrap());
        for a in s.all_events().unwrap() {
            assert!(is_independent(&m, &a, &s.full()).unwrap());
            // documented consequence of the product form
            assert!(is_independent(&m, &a, &s.empty()).unwrap());
        }
    }

    #[test]
    fn mutual_independence_examples() {
        let (s, m) = coins();
        let a = ev(&s, &["HH", "HT"]);
        let b = ev(&s, &["HH", "TH"]);
        let r = is_mutually_independent(&m, &[a.clone(), b.clone(), s.full()]).unwrap();
        assert!(r.holds);
        assert_eq!(r.violating, None);
        assert!(
            is_mutually_independent(&m, &[a.clone(), b.clone()])
                .unwrap()
                .holds
        );

        let x = SampleSpace::new(["00", "01", "10", "11"]).unwrap();
        let mx = ProbabilityMeasure::uniform(&x);
        let first = ev(&x, &["10", "11"]);
        let second = ev(&x, &["01", "11"]);
        let differ = ev(&x, &["01", "10"]);
        let fam = [first, second, differ];
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(is_independent(&mx, &fam[i], &fam[j]).unwrap());
            }
        }
        let r = is_mutually_independent(&mx, &fam).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violating, Some(vec![0, 1, 2]));

        let r = is_mutually_independent(&m, &[a.clone(), a.clone(), b.clone()]).unwrap();
        assert_eq!(r.violating, Some(vec![0, 1]));
        let err = is_mutually_independent_with_cap(&m, &[a.clone(), b, a], 2).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { .. }));
    }

    #[test]
    fn total_probability_examples() {
        let (s, m) = die();
        let a = ev(&s, &["2", "4", "6"]);
        let part = [ev(&s, &["1", "2"]), ev(&s, &["3", "4"]), ev(&s, &["5", "6"])];
        let tp = total_probability(&m, &a, &part).unwrap();
        assert_eq!(tp.terms, vec![ratio(1, 6); 3]);
        assert_eq!(tp.total, ratio(1, 2));
        assert_eq!(total_probability(&m, &a, &[s.full()]).unwrap().total, ratio(1, 2));
        assert_eq!(
            total_probability(&m, &s.full(), &part).unwrap().total,
            ratio(1, 1)
        );
        let bad = [ev(&s, &["1", "2"]), ev(&s, &["2", "3"])];
        assert_eq!(total_probability(&m, &a, &bad), Err(Error::NotAPartition));
    }

    #[test]
    fn total_probability_tolerates_null_blocks() {
        let s = SampleSpace::numbered(3).unwrap();
        let m = ProbabilityMeasure::from_integer_weights(&s, &[1, 1, 0]).unwrap();
        let part = [ev(&s, &["1"]), ev(&s, &["2"]), ev(&s, &["3"]), s.empty()];
        let a = ev(&s, &["1", "3"]);
        let tp = total_probability(&m, &a, &part).unwrap();
        assert_eq!(tp.terms, vec![ratio(1, 2), ratio(0, 1), ratio(0, 1), ratio(0, 1)]);
        assert_eq!(tp.total, prob(&m, &a).unwrap());
    }

    #[test]
    fn bayes_examples() {
        let (s, m) = die();
        let a = ev(&s, &["1", "2", "3"]);
        let part = [ev(&s, &["1", "2"]), ev(&s, &["3", "4"]), ev(&s, &["5", "6"])];
        assert_eq!(bayes(&m, 0, &a, &part).unwrap(), ratio(2, 3));
        assert_eq!(cond_prob(&m, &part[0], &a).unwrap(), ratio(2, 3));
        assert_eq!(bayes(&m, 0, &a, &[s.full()]).unwrap(), ratio(1, 1));

        let post = posteriors(&m, &a, &part).unwrap();
        assert_eq!(post, vec![ratio(2, 3), ratio(1, 3), ratio(0, 1)]);
        assert_eq!(post.iter().sum::<Rational>(), ratio(1, 1));

        assert_eq!(bayes(&m, 2, &a, &part).unwrap(), ratio(0, 1));
        assert_eq!(
            bayes(&m, 3, &a, &part),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
        assert_eq!(bayes(&m, 0, &s.empty(), &part), Err(Error::EvidenceNull));
        assert_eq!(bayes(&m, 0, &a, &part[..2]), Err(Error::NotAPartition));

        let t = SampleSpace::numbered(2).unwrap();
        let mt = ProbabilityMeasure::from_integer_weights(&t, &[1, 0]).unwrap();
        let pt = [ev(&t, &["1"]), ev(&t, &["2"])];
        assert_eq!(bayes(&mt, 1, &t.full(), &pt), Err(Error::PriorNull { index: 1 }));
    }

    #[test]
    fn numeric_bayes() {
        let t = BayesTable::new(vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        assert_eq!(bayes_table(&t).unwrap(), vec![ratio(1, 3), ratio(2, 3)]);

        let priors = vec![ratio(1, 5), ratio(3, 10), ratio(1, 2)];
        let t = BayesTable::new(priors.clone(), vec![ratio(1, 7); 3]).unwrap();
        assert_eq!(bayes_table(&t).unwrap(), priors);

        let t = BayesTable::new(vec![ratio(1, 1), ratio(0, 1)], vec![ratio(1, 4), ratio(9, 10)]).unwrap();
        assert_eq!(bayes_table(&t).unwrap(), vec![ratio(1, 1), ratio(0, 1)]);

        let t = BayesTable::new(vec![ratio(1, 2), ratio(1, 2)], vec![ratio(0, 1), ratio(0, 1)]).unwrap();
        assert_eq!(bayes_table(&t), Err(Error::EvidenceNull));

        assert!(matches!(
            BayesTable::new(vec![ratio(1, 2)], vec![ratio(1, 2), ratio(1, 2)]),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
        assert!(matches!(
            BayesTable::new(vec![ratio(1, 2), ratio(1, 3)], vec![ratio(1, 2); 2]),
            Err(Error::InvalidPrior(_))
        ));
        assert!(matches!(
            BayesTable::new(vec![ratio(3, 2), ratio(-1, 2)], vec![ratio(1, 2); 2]),
            Err(Error::InvalidPrior(_))
        ));
        assert!(matches!(
            BayesTable::new(vec![ratio(1, 1)], vec![ratio(3, 2)]),
            Err(Error::InvalidLikelihood(_))
        ));
    }

    #[test]
    fn bayes_table_text_form() {
        let t = parse_bayes_table("prior,likelihood\n# two hypotheses\n1/2, 1/3\n1/2,2/3\n\n").unwrap();
        assert_eq!(bayes_table(&t).unwrap(), vec![ratio(1, 3), ratio(2, 3)]);
        assert_eq!(
            parse_bayes_table("1/2,1/3\n1/2\n"),
            Err(TableParseError::Syntax {
                line: 2,
                message: "expected 2 columns, found 1".into()
            })
        );
        assert!(matches!(
            parse_bayes_table("1/2,x\n"),
            Err(TableParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_bayes_table("1/2,1/2\n"),
            Err(TableParseError::Invalid(Error::InvalidPrior(_)))
        ));
    }

    #[test]
    fn conditional_addition_examples() {
        let (s, m) = die();
        let b = ev(&s, &["1", "2", "3"]);
        let fam = [ev(&s, &["1"]), ev(&s, &["2"])];
        assert_eq!(cond_addition(&m, &fam, &b).unwrap(), ratio(2, 3));
        assert_eq!(cond_prob(&m, &ev(&s, &["1", "2"]), &b).unwrap(), ratio(2, 3));
        assert_eq!(cond_addition(&m, &s.singletons(), &b).unwrap(), ratio(1, 1));
        let a = ev(&s, &["2", "4", "6"]);
        assert_eq!(
            cond_addition(&m, std::slice::from_ref(&a), &b).unwrap(),
            cond_prob(&m, &a, &b).unwrap()
        );
        assert_eq!(
            cond_addition(&m, &[ev(&s, &["1", "2"]), ev(&s, &["2"])], &b),
            Err(Error::NotDisjoint { first: 0, second: 1 })
        );
        assert_eq!(cond_addition(&m, &fam, &s.empty()), Err(Error::ConditionOnNull));
    }
}
