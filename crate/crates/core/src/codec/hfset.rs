//! Hereditarily finite sets in canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

/// A hereditarily finite set. Elements are kept sorted in Ackermann order
/// and deduplicated, so structural equality is extensional equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HfSet(Vec<HfSet>);

impl Ord for HfSet {
    /// Ackermann order: compare `Σ 2^ack(x)` by the largest differing element.
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0.iter().rev(), other.0.iter().rev());
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Equal => continue,
                    o => return o,
                },
            }
        }
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl HfSet {
    pub fn empty() -> Self {
        HfSet(Vec::new())
    }

    pub fn new(elements: impl IntoIterator<Item = HfSet>) -> Self {
        let mut v: Vec<HfSet> = elements.into_iter().collect();
        v.sort();
        v.dedup();
        HfSet(v)
    }

    pub fn singleton(a: HfSet) -> Self {
        HfSet(vec![a])
    }

    /// Kuratowski pair `{{a}, {a, b}}`.
    pub fn kpair(a: HfSet, b: HfSet) -> Self {
        HfSet::new([HfSet::singleton(a.clone()), HfSet::new([a, b])])
    }

    /// Elements in ascending Ackermann order.
    pub fn elements(&self) -> &[HfSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn ack(&self) -> BigUint {
        let mut n = BigUint::zero();
        for x in &self.0 {
            let e = x.ack();
            let bit = u64::try_from(&e).expect("element code fits a bit index");
            n.set_bit(bit, true);
        }
        n
    }

    pub fn from_ack(n: &BigUint) -> Self {
        HfSet((0..n.bits()).filter(|&i| n.bit(i)).map(|i| HfSet::from_ack(&BigUint::from(i))).collect())
    }

    pub fn from_ack_u64(n: u64) -> Self {
        HfSet::from_ack(&BigUint::from(n))
    }

    /// von Neumann rank: 0 for ∅, otherwise one more than the largest
    /// element rank.
    pub fn rank(&self) -> usize {
        self.0.iter().map(|x| x.rank() + 1).max().unwrap_or(0)
    }

    /// The transitive closure of the set itself, in Ackermann order.
    pub fn trcl(&self) -> Vec<HfSet> {
        let mut out: Vec<HfSet> = Vec::new();
        let mut stack: Vec<&HfSet> = self.0.iter().collect();
        while let Some(x) = stack.pop() {
            if !out.contains(x) {
                out.push(x.clone());
                stack.extend(x.0.iter());
            }
        }
        out.sort();
        out
    }

    /// Number of elements of `V_n`, the sets of rank below `n`, when it fits.
    pub fn v_size(n: u32) -> Option<u64> {
        let mut size: u64 = 0;
        for _ in 0..n {
            size = if size >= 64 { return None } else { 1u64 << size };
        }
        Some(size)
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad set literal at byte {pos}: {message}")]
pub struct HfParseError {
    pub pos: usize,
    pub message: String,
}

impl FromStr for HfSet {
    type Err = HfParseError;

    /// Nested braces such as `{{},{{}}}`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes: Vec<(usize, u8)> = s.bytes().enumerate().filter(|(_, b)| !b.is_ascii_whitespace()).collect();
        let err = |pos: usize, message: &str| HfParseError { pos, message: message.to_string() };
        let mut i = 0;
        let set = parse_set(&bytes, &mut i, s.len()).map_err(|(p, m)| err(p, m))?;
        if let Some(&(p, _)) = bytes.get(i) {
            return Err(err(p, "trailing input"));
        }
        Ok(set)
    }
}

fn parse_set(b: &[(usize, u8)], i: &mut usize, end: usize) -> Result<HfSet, (usize, &'static str)> {
    let at = |i: usize| b.get(i).map_or(end, |&(p, _)| p);
    match b.get(*i) {
        Some((_, b'{')) => *i += 1,
        _ => return Err((at(*i), "expected `{`")),
    }
    let mut elems = Vec::new();
    if let Some((_, b'}')) = b.get(*i) {
        *i += 1;
        return Ok(HfSet::empty());
    }
    loop {
        elems.push(parse_set(b, i, end)?);
        match b.get(*i) {
            Some((_, b',')) => *i += 1,
            Some((_, b'}')) => {
                *i += 1;
                return Ok(HfSet::new(elems));
            }
            _ => return Err((at(*i), "expected `,` or `}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_codes() {
        let e = HfSet::empty();
        let one = HfSet::singleton(e.clone());
        let two = HfSet::new([e.clone(), one.clone()]);
        assert_eq!(e.ack(), BigUint::zero());
        assert_eq!(one.ack(), BigUint::from(1u32));
        assert_eq!(HfSet::singleton(one.clone()).ack(), BigUint::from(2u32));
        assert_eq!(two.ack(), BigUint::from(3u32));
        assert_eq!(two.to_string(), "{{},{{}}}");
        assert_eq!("{ {{}}, {} }".parse::<HfSet>().unwrap(), two);
        assert!("{{}".parse::<HfSet>().is_err());
        assert!("{}}".parse::<HfSet>().is_err());
    }

    #[test]
    fn ack_order_matches_integer_order() {
        let sets: Vec<HfSet> = (0..300).map(HfSet::from_ack_u64).collect();
        for w in sets.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (n, s) in sets.iter().enumerate() {
            assert_eq!(s.ack(), BigUint::from(n));
        }
    }

    #[test]
    fn rank_and_closure() {
        let two = HfSet::from_ack_u64(3);
        assert_eq!(two.rank(), 2);
        assert_eq!(two.trcl().len(), 2);
        assert_eq!(HfSet::v_size(5), Some(65536));
        assert_eq!(HfSet::v_size(6), None);
    }
}
