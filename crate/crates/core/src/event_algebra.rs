//! Finite set algebra over a sample space.
//!
//! A [`SampleSpace`] is an ordered, labelled, finite set of outcomes. An
//! [`Event`] is a membership mask over one space and remembers which space it
//! came from: mixing events of different spaces is always an error, never a
//! silent realignment by label.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default member cap for [`generate_sigma_algebra`].
pub const DEFAULT_SIGMA_MEMBER_CAP: usize = 1 << 20;

const WORD_BITS: usize = 64;

/// Identity token of a [`SampleSpace`]. Fresh for every constructed space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceId(u64);

impl SpaceId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        SpaceId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Clone)]
pub struct SampleSpace {
    id: SpaceId,
    outcomes: Arc<[String]>,
    index: Arc<HashMap<String, usize>>,
}

impl PartialEq for SampleSpace {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for SampleSpace {}

impl SampleSpace {
    /// Builds a space from outcome labels. Labels must be nonempty and
    /// pairwise distinct, and there must be at least one.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let outcomes: Vec<String> = labels.into_iter().map(Into::into).collect();
        if outcomes.is_empty() {
            return Err(Error::InvalidSpace(
                "a sample space needs at least one outcome".into(),
            ));
        }
        let mut index = HashMap::with_capacity(outcomes.len());
        for (i, label) in outcomes.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidSpace(format!(
                    "outcome {} has an empty label",
                    i + 1
                )));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate outcome label `{label}`")));
            }
        }
        Ok(SampleSpace {
            id: SpaceId::fresh(),
            outcomes: outcomes.into(),
            index: Arc::new(index),
        })
    }

    /// Space with outcomes labelled `1..=n`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The ∅-event.
    pub fn empty(&self) -> Event {
        Event::blank(self.id, self.len())
    }

    /// The Ω-event.
    pub fn full(&self) -> Event {
        let mut e = self.empty();
        for i in 0..self.len() {
            e.set(i);
        }
        e
    }

    pub fn singleton(&self, index: usize) -> Result<Event> {
        self.event_from_indices([index])
    }

    pub fn singletons(&self) -> Vec<Event> {
        (0..self.len())
            .map(|i| {
                let mut e = self.empty();
                e.set(i);
                e
            })
            .collect()
    }

    /// Event containing the outcomes at the given zero-based positions.
    pub fn event_from_indices<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<Event> {
        let mut e = self.empty();
        for i in indices {
            if i >= self.len() {
                return Err(Error::InvalidSpace(format!(
                    "outcome index {i} out of range for {} outcomes",
                    self.len()
                )));
            }
            e.set(i);
        }
        Ok(e)
    }

    pub fn event_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Event> {
        let mut e = self.empty();
        for label in labels {
            let label = label.as_ref();
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::InvalidSpace(format!("unknown outcome `{label}`")))?;
            e.set(i);
        }
        Ok(e)
    }

    /// Event from a `0`/`1` string, first character = first outcome.
    pub fn event_from_mask(&self, mask: &str) -> Result<Event> {
        if mask.chars().count() != self.len() {
            return Err(Error::InvalidSpace(format!(
                "mask `{mask}` has length {} but the space has {} outcomes",
                mask.chars().count(),
                self.len()
            )));
        }
        let mut e = self.empty();
        for (i, c) in mask.chars().enumerate() {
            match c {
                '1' => e.set(i),
                '0' => {}
                other => return Err(Error::InvalidSpace(format!("invalid mask character `{other}`"))),
            }
        }
        Ok(e)
    }

    /// Event whose membership is bit `i` of `bits` for outcome `i`.
    /// Only meaningful for spaces of at most 64 outcomes.
    pub fn event_from_bits(&self, bits: u64) -> Event {
        let mut e = self.empty();
        for i in 0..self.len().min(WORD_BITS) {
            if bits >> i & 1 == 1 {
                e.set(i);
            }
        }
        e
    }

    /// Every subset of Ω, in increasing bit order. Only for small spaces.
    pub fn all_events(&self) -> Result<Vec<Event>> {
        const MAX_OUTCOMES: usize = 20;
        if self.len() > MAX_OUTCOMES {
            return Err(Error::SizeLimit {
                what: "event enumeration",
                requested: self.len(),
                limit: MAX_OUTCOMES,
            });
        }
        Ok((0u64..1 << self.len())
            .map(|bits| self.event_from_bits(bits))
            .collect())
    }

    /// `{a,b,c}` rendering using outcome labels.
    pub fn format_event(&self, event: &Event) -> String {
        let labels: Vec<&str> = event.outcomes().map(|i| self.outcomes[i].as_str()).collect();
        format!("{{{}}}", labels.join(","))
    }

    pub fn owns(&self, event: &Event) -> bool {
        event.space == self.id && event.len == self.len()
    }

    pub(crate) fn check(&self, event: &Event) -> Result<()> {
        if self.owns(event) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

/// Subset of a sample space as a membership mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    space: SpaceId,
    len: usize,
    words: Vec<u64>,
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Event({})", self.mask_string())
    }
}

impl Event {
    fn blank(space: SpaceId, len: usize) -> Self {
        Event {
            space,
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn space_id(&self) -> SpaceId {
        self.space
    }

    /// Number of outcomes in the owning space.
    pub fn space_len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    /// Number of outcomes in the event.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    /// Positions of the outcomes in the event, ascending.
    pub fn outcomes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    /// `0`/`1` string, first character = first outcome.
    pub fn mask_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    pub fn same_space(&self, other: &Event) -> bool {
        self.space == other.space && self.len == other.len
    }

    fn check(&self, other: &Event) -> Result<()> {
        if self.same_space(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    fn zip_with(&self, other: &Event, op: impl Fn(u64, u64) -> u64) -> Event {
        Event {
            space: self.space,
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub(crate) fn union_unchecked(&self, other: &Event) -> Event {
        self.zip_with(other, |a, b| a | b)
    }

    pub(crate) fn intersection_unchecked(&self, other: &Event) -> Event {
        self.zip_with(other, |a, b| a & b)
    }

    pub(crate) fn complement_unchecked(&self) -> Event {
        let mut out = Event {
            space: self.space,
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out
    }

    pub(crate) fn disjoint_unchecked(&self, other: &Event) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub(crate) fn subset_unchecked(&self, other: &Event) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Event) -> Result<bool> {
        self.check(other)?;
        Ok(self.subset_unchecked(other))
    }
}

pub fn union(a: &Event, b: &Event) -> Result<Event> {
    a.check(b)?;
    Ok(a.union_unchecked(b))
}

pub fn intersection(a: &Event, b: &Event) -> Result<Event> {
    a.check(b)?;
    Ok(a.intersection_unchecked(b))
}

pub fn complement(a: &Event) -> Event {
    a.complement_unchecked()
}

/// `a ∩ ~b`.
pub fn difference(a: &Event, b: &Event) -> Result<Event> {
    a.check(b)?;
    Ok(a.zip_with(b, |x, y| x & !y))
}

/// Union of a nonempty family.
pub fn union_all(events: &[Event]) -> Result<Event> {
    let (first, rest) = events.split_first().ok_or(Error::EmptyFamily)?;
    rest.iter().try_fold(first.clone(), |acc, e| union(&acc, e))
}

/// Intersection of a nonempty family.
pub fn intersection_all(events: &[Event]) -> Result<Event> {
    let (first, rest) = events.split_first().ok_or(Error::EmptyFamily)?;
    rest.iter()
        .try_fold(first.clone(), |acc, e| intersection(&acc, e))
}

pub(crate) fn check_family(events: &[Event]) -> Result<()> {
    let (first, rest) = events.split_first().ok_or(Error::EmptyFamily)?;
    rest.iter().try_for_each(|e| first.check(e))
}

/// Pairwise mutually exclusive: `a ∩ b = ∅`.
pub fn is_pme(a: &Event, b: &Event) -> Result<bool> {
    a.check(b)?;
    Ok(a.disjoint_unchecked(b))
}

/// First pair `(i, j)`, `i < j`, of overlapping events in the family.
pub fn first_overlap(events: &[Event]) -> Result<Option<(usize, usize)>> {
    check_family(events)?;
    for i in 0..events.len() {
        for j in i + 1..events.len() {
            if !events[i].disjoint_unchecked(&events[j]) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Mutual exclusivity of a family, decided pairwise.
///
/// Every sub-collection of two or more events has an empty intersection
/// exactly when every pair does, so this is also the "exclusive as a whole"
/// notion. An empty intersection of the whole family is not enough:
/// `{1,2}, {2,3}, {1,3}` has an empty triple intersection but overlapping pairs.
pub fn is_pme_family(events: &[Event]) -> Result<bool> {
    Ok(first_overlap(events)?.is_none())
}

/// Pairwise disjoint blocks covering Ω. Empty blocks are allowed.
pub fn is_partition(events: &[Event]) -> Result<bool> {
    if !is_pme_family(events)? {
        return Ok(false);
    }
    Ok(union_all(events)?.is_full())
}

/// Collection of events closed under complement and union, containing Ω.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaAlgebra {
    space: SpaceId,
    members: BTreeSet<Event>,
}

impl SigmaAlgebra {
    /// The full power set of a (small) space.
    pub fn power_set(space: &SampleSpace) -> Result<Self> {
        Ok(SigmaAlgebra {
            space: space.id(),
            members: space.all_events()?.into_iter().collect(),
        })
    }

    pub fn space_id(&self) -> SpaceId {
        self.space
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true: Ω and ∅ are always members.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, event: &Event) -> bool {
        self.members.contains(event)
    }

    /// Members in canonical (mask) order.
    pub fn members(&self) -> impl Iterator<Item = &Event> {
        self.members.iter()
    }
}

/// Smallest σ-algebra containing the generators, with the default member cap.
pub fn generate_sigma_algebra(space: &SampleSpace, generators: &[Event]) -> Result<SigmaAlgebra> {
    generate_sigma_algebra_with_cap(space, generators, DEFAULT_SIGMA_MEMBER_CAP)
}

/// Saturates `{∅, Ω} ∪ generators` under complement and pairwise union.
///
/// Each round only combines the members added in the previous round with
/// everything seen so far, so every pair is combined exactly once.
pub fn generate_sigma_algebra_with_cap(
    space: &SampleSpace,
    generators: &[Event],
    cap: usize,
) -> Result<SigmaAlgebra> {
    for g in generators {
        space.check(g)?;
    }
    let mut members: BTreeSet<Event> = BTreeSet::new();
    members.insert(space.empty());
    members.insert(space.full());
    members.extend(generators.iter().cloned());
    let over = |n: usize| Error::SizeLimit {
        what: "sigma-algebra closure",
        requested: n,
        limit: cap,
    };
    if members.len() > cap {
        return Err(over(members.len()));
    }

    let mut frontier: Vec<Event> = members.iter().cloned().collect();
    while !frontier.is_empty() {
        let seen: Vec<Event> = members.iter().cloned().collect();
        let mut next = Vec::new();
        for e in &frontier {
            let c = e.complement_unchecked();
            if members.insert(c.clone()) {
                next.push(c);
            }
            for f in &seen {
                let u = e.union_unchecked(f);
                if members.insert(u.clone()) {
                    next.push(u);
                }
            }
            if members.len() > cap {
                return Err(over(members.len()));
            }
        }
        frontier = next;
    }
    Ok(SigmaAlgebra {
        space: space.id(),
        members,
    })
}

/// Which σ-algebra property a collection fails, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaViolation {
    /// Ω is not a member.
    MissingSpace,
    /// `member` is present but its complement is not.
    MissingComplement { member: Event },
    /// Both are present but their union is not.
    MissingUnion { left: Event, right: Event },
}

impl SigmaViolation {
    /// Human-readable description using the space's outcome labels.
    pub fn describe(&self, space: &SampleSpace) -> String {
        match self {
            SigmaViolation::MissingSpace => "the sample space itself is not a member".to_string(),
            SigmaViolation::MissingComplement { member } => format!(
                "complement of {} is missing (expected {})",
                space.format_event(member),
                space.format_event(&member.complement_unchecked())
            ),
            SigmaViolation::MissingUnion { left, right } => format!(
                "union of {} and {} is missing (expected {})",
                space.format_event(left),
                space.format_event(right),
                space.format_event(&left.union_unchecked(right))
            ),
        }
    }
}

/// Checks Ω membership, then complement closure, then pairwise union
/// closure, and reports the first failure in member order.
pub fn is_sigma_algebra(space: &SampleSpace, members: &[Event]) -> Result<Option<SigmaViolation>> {
    for m in members {
        space.check(m)?;
    }
    let set: BTreeSet<&Event> = members.iter().collect();
    if !set.contains(&space.full()) {
        return Ok(Some(SigmaViolation::MissingSpace));
    }
    for m in members {
        if !set.contains(&m.complement_unchecked()) {
            return Ok(Some(SigmaViolation::MissingComplement { member: m.clone() }));
        }
    }
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if !set.contains(&a.union_unchecked(b)) {
                return Ok(Some(SigmaViolation::MissingUnion {
                    left: a.clone(),
                    right: b.clone(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn die() -> SampleSpace {
        SampleSpace::numbered(6).unwrap()
    }

    fn ev(space: &SampleSpace, labels: &[&str]) -> Event {
        space.event_from_labels(labels).unwrap()
    }

    #[test]
    fn space_rejects_bad_labels() {
        assert!(SampleSpace::new(Vec::<String>::new()).is_err());
        assert!(SampleSpace::new(["a", "a"]).is_err());
        assert!(SampleSpace::new(["a", ""]).is_err());
        assert!(SampleSpace::new(["only"]).is_ok());
    }

    #[test]
    fn union_and_intersection_on_a_die() {
        let s = die();
        let a = ev(&s, &["2", "4", "6"]);
        let b = ev(&s, &["1", "2", "3"]);
        assert_eq!(union(&a, &b).unwrap(), ev(&s, &["1", "2", "3", "4", "6"]));
        assert_eq!(intersection(&a, &b).unwrap(), ev(&s, &["2"]));
    }

    #[test]
    fn empty_and_space_identities() {
        let s = die();
        let b = ev(&s, &["1", "2", "3"]);
        let empty = s.empty();
        let full = s.full();
        assert_eq!(union(&empty, &b).unwrap(), b);
        assert_eq!(intersection(&empty, &b).unwrap(), empty);
        assert_eq!(union(&full, &b).unwrap(), full);
        assert_eq!(intersection(&full, &b).unwrap(), b);
        assert_eq!(complement(&complement(&b)), b);
        assert_eq!(union(&b, &complement(&b)).unwrap(), full);
        assert!(intersection(&b, &complement(&b)).unwrap().is_empty());
    }

    #[test]
    fn complement_masks_the_tail_word() {
        let s = SampleSpace::numbered(70).unwrap();
        let full = s.full();
        assert_eq!(full.count(), 70);
        assert!(complement(&full).is_empty());
        assert_eq!(complement(&s.empty()), full);
    }

    #[test]
    fn cross_space_operations_fail() {
        let s = die();
        let t = die();
        let a = s.full();
        let b = t.full();
        assert_eq!(union(&a, &b), Err(Error::SpaceMismatch));
        assert_eq!(intersection(&a, &b), Err(Error::SpaceMismatch));
        assert_eq!(is_pme(&a, &b), Err(Error::SpaceMismatch));
        assert_eq!(is_pme_family(&[a.clone(), b.clone()]), Err(Error::SpaceMismatch));
        assert_eq!(
            generate_sigma_algebra(&s, &[b]).unwrap_err(),
            Error::SpaceMismatch
        );
    }

    #[test]
    fn pme_pairs() {
        let s = die();
        let evens = ev(&s, &["2", "4", "6"]);
        let odds = ev(&s, &["1", "3", "5"]);
        let low = ev(&s, &["1", "2", "3"]);
        assert!(is_pme(&evens, &odds).unwrap());
        assert!(!is_pme(&evens, &low).unwrap());
        for a in s.all_events().unwrap() {
            assert!(is_pme(&a, &s.empty()).unwrap());
        }
    }

    #[test]
    fn pme_families() {
        let s = die();
        let fam = [ev(&s, &["1", "2"]), ev(&s, &["3", "4"]), ev(&s, &["5", "6"])];
        assert!(is_pme_family(&fam).unwrap());
        assert!(is_pme_family(&fam[..1]).unwrap());
        assert_eq!(is_pme_family(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn empty_triple_intersection_does_not_make_a_family_exclusive() {
        let s = SampleSpace::numbered(3).unwrap();
        let fam = [ev(&s, &["1", "2"]), ev(&s, &["2", "3"]), ev(&s, &["1", "3"])];
        assert!(intersection_all(&fam).unwrap().is_empty());
        assert!(!is_pme_family(&fam).unwrap());
        assert_eq!(first_overlap(&fam).unwrap(), Some((0, 1)));
    }

    #[test]
    fn partitions() {
        let s = die();
        let fam = [ev(&s, &["1", "2"]), ev(&s, &["3", "4"]), ev(&s, &["5", "6"])];
        assert!(is_partition(&fam).unwrap());
        let bad = [ev(&s, &["1", "2"]), ev(&s, &["2", "3"]), ev(&s, &["4", "5", "6"])];
        assert!(!is_partition(&bad).unwrap());
        let short = [ev(&s, &["1", "2"]), ev(&s, &["3", "4"])];
        assert!(!is_partition(&short).unwrap());
        for a in s.all_events().unwrap() {
            assert!(is_partition(&[a.clone(), complement(&a)]).unwrap());
        }
        assert!(is_partition(&s.singletons()).unwrap());
        assert_eq!(is_partition(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn sigma_generation_examples() {
        let s = SampleSpace::numbered(3).unwrap();
        let one = ev(&s, &["1"]);
        let alg = generate_sigma_algebra(&s, std::slice::from_ref(&one)).unwrap();
        let expected: BTreeSet<Event> = [s.empty(), one.clone(), ev(&s, &["2", "3"]), s.full()]
            .into_iter()
            .collect();
        assert_eq!(alg.members().cloned().collect::<BTreeSet<_>>(), expected);

        let trivial = generate_sigma_algebra(&s, &[]).unwrap();
        assert_eq!(trivial.len(), 2);
        assert!(trivial.contains(&s.empty()) && trivial.contains(&s.full()));

        let full = generate_sigma_algebra(&s, &[one, ev(&s, &["2"])]).unwrap();
        assert_eq!(full.len(), 8);
        assert_eq!(full, SigmaAlgebra::power_set(&s).unwrap());
    }

    #[test]
    fn sigma_generation_respects_cap() {
        let s = SampleSpace::numbered(5).unwrap();
        let err = generate_sigma_algebra_with_cap(&s, &s.singletons(), 16).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { limit: 16, .. }));
        assert_eq!(
            generate_sigma_algebra_with_cap(&s, &s.singletons(), 32)
                .unwrap()
                .len(),
            32
        );
    }

    #[test]
    fn sigma_check_examples() {
        let s = SampleSpace::numbered(3).unwrap();
        let members = [s.empty(), ev(&s, &["1"]), ev(&s, &["2", "3"]), s.full()];
        assert_eq!(is_sigma_algebra(&s, &members).unwrap(), None);

        let broken = [s.empty(), s.full(), ev(&s, &["1"])];
        let v = is_sigma_algebra(&s, &broken).unwrap().unwrap();
        assert_eq!(
            v,
            SigmaViolation::MissingComplement {
                member: ev(&s, &["1"])
            }
        );
        assert_eq!(v.describe(&s), "complement of {1} is missing (expected {2,3})");

        assert_eq!(
            is_sigma_algebra(&s, &[s.empty()]).unwrap(),
            Some(SigmaViolation::MissingSpace)
        );
        let no_union = [
            s.empty(),
            s.full(),
            ev(&s, &["1"]),
            ev(&s, &["2", "3"]),
            ev(&s, &["2"]),
            ev(&s, &["1", "3"]),
        ];
        assert!(matches!(
            is_sigma_algebra(&s, &no_union).unwrap(),
            Some(SigmaViolation::MissingUnion { .. })
        ));

        let power = s.all_events().unwrap();
        assert_eq!(is_sigma_algebra(&s, &power).unwrap(), None);
    }

    fn space_and_events(max: usize, k: usize) -> impl Strategy<Value = (usize, Vec<u64>)> {
        (1..=max).prop_flat_map(move |n| (Just(n), proptest::collection::vec(0u64..(1 << n), k)))
    }

    proptest! {
        #[test]
        fn de_morgan_and_distributivity((n, bits) in space_and_events(8, 3)) {
            let s = SampleSpace::numbered(n).unwrap();
            let a = s.event_from_bits(bits[0]);
            let b = s.event_from_bits(bits[1]);
            let c = s.event_from_bits(bits[2]);
            prop_assert_eq!(
                complement(&union(&a, &b).unwrap()),
                intersection(&complement(&a), &complement(&b)).unwrap()
            );
            prop_assert_eq!(
                complement(&intersection(&a, &b).unwrap()),
                union(&complement(&a), &complement(&b)).unwrap()
            );
            prop_assert_eq!(
                intersection(&a, &union(&b, &c).unwrap()).unwrap(),
                union(&intersection(&a, &b).unwrap(), &intersection(&a, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                union(&a, &intersection(&b, &c).unwrap()).unwrap(),
                intersection(&union(&a, &b).unwrap(), &union(&a, &c).unwrap()).unwrap()
            );
        }

        #[test]
        fn generated_algebras_are_closed_with_power_of_two_size((n, bits) in space_and_events(6, 3)) {
            let s = SampleSpace::numbered(n).unwrap();
            let gens: Vec<Event> = bits.iter().map(|&b| s.event_from_bits(b)).collect();
            let alg = generate_sigma_algebra(&s, &gens).unwrap();
            let members: Vec<Event> = alg.members().cloned().collect();
            prop_assert_eq!(is_sigma_algebra(&s, &members).unwrap(), None);
            prop_assert!(alg.len().is_power_of_two());
            for g in &gens {
                prop_assert!(alg.contains(g));
            }
            // order independence
            let mut rev = gens.clone();
            rev.reverse();
            prop_assert_eq!(generate_sigma_algebra(&s, &rev).unwrap(), alg);
        }
    }
}
