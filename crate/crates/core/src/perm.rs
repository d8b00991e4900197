//! Permutations of `{1..n}` and their cycle types.
//!
//! Points are 1-based in every textual form. Internally a permutation is a
//! 0-based image vector.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (pos, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x + 1, n, pos });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::DuplicatePoint { point: x + 1, pos });
            }
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        let images = one_line
            .iter()
            .enumerate()
            .map(|(pos, &x)| {
                if x == 0 || x > n {
                    Err(Error::PointOutOfRange { point: x, n, pos })
                } else {
                    Ok(x - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }

    /// Builds from 1-based disjoint cycles; omitted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for (pos, &x) in cycles.iter().flatten().enumerate() {
            if x == 0 || x > n {
                return Err(Error::PointOutOfRange { point: x, n, pos });
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::DuplicatePoint { point: x, pos });
            }
        }
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses one-line (`"2 1 4 3"`) or cycle (`"(1 2)(3,4)"`) notation.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
        if text.contains('(') {
            let cycles = parse_cycles(text)?;
            let mut seen = vec![false; n];
            for &(pos, x) in cycles.iter().flatten() {
                if x == 0 || x > n {
                    return Err(Error::PointOutOfRange { point: x, n, pos });
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::DuplicatePoint { point: x, pos });
                }
            }
            let cycles: Vec<Vec<usize>> = cycles
                .into_iter()
                .map(|c| c.into_iter().map(|(_, x)| x).collect())
                .collect();
            Self::from_cycles(n, &cycles)
        } else {
            let points = parse_numbers(text, 0)?;
            if points.len() != n {
                return Err(Error::Syntax {
                    pos: text.len(),
                    msg: format!("one-line notation needs {n} points, found {}", points.len()),
                });
            }
            let one_line: Vec<usize> = points.iter().map(|&(_, x)| x).collect();
            // report positions as byte offsets in the original text
            Self::from_one_line(&one_line).map_err(|e| match e {
                Error::PointOutOfRange { point, n, pos } => Error::PointOutOfRange {
                    point,
                    n,
                    pos: points[pos].0,
                },
                Error::DuplicatePoint { point, pos } => Error::DuplicatePoint {
                    point,
                    pos: points[pos].0,
                },
                other => other,
            })
        }
    }

    /// Smallest degree the text can describe: the length of a one-line form,
    /// or the largest point mentioned in cycle notation.
    pub fn infer_degree(text: &str) -> Result<usize> {
        if text.contains('(') {
            let max = parse_cycles(text)?.iter().flatten().map(|&(_, x)| x).max();
            Ok(max.unwrap_or(1).max(1))
        } else {
            Ok(parse_numbers(text, 0)?.len())
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// Cycles as 0-based point lists, each starting at its smallest point,
    /// ordered by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn power(&self, k: u64) -> Permutation {
        let mut images = vec![0; self.degree()];
        for cycle in self.cycles() {
            let len = cycle.len();
            let shift = (k % len as u64) as usize;
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + shift) % len];
            }
        }
        Permutation { images }
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut counts = BTreeMap::new();
        for cycle in self.cycles() {
            *counts.entry(cycle.len()).or_insert(0) += 1;
        }
        CycleType { n: self.degree(), counts }
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Numbers separated by whitespace or commas, with their byte offsets.
fn parse_numbers(text: &str, offset: usize) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut start = None;
    let bytes = text.as_bytes();
    for i in 0..=bytes.len() {
        let c = bytes.get(i).copied();
        match c {
            Some(b'0'..=b'9') => {
                start.get_or_insert(i);
            }
            Some(b' ' | b'\t' | b'\n' | b'\r' | b',') | None => {
                if let Some(s) = start.take() {
                    let value = text[s..i].parse::<usize>().map_err(|_| Error::Syntax {
                        pos: offset + s,
                        msg: "number too large".into(),
                    })?;
                    out.push((offset + s, value));
                }
            }
            Some(other) => {
                return Err(Error::Syntax {
                    pos: offset + i,
                    msg: format!("unexpected character {:?}", other as char),
                })
            }
        }
    }
    Ok(out)
}

/// Cycles of `(byte offset, point)` pairs.
fn parse_cycles(text: &str) -> Result<Vec<Vec<(usize, usize)>>> {
    let mut cycles = Vec::new();
    let mut rest = 0;
    while rest < text.len() {
        let tail = &text[rest..];
        let skip = tail.len() - tail.trim_start().len();
        rest += skip;
        if rest == text.len() {
            break;
        }
        if !text[rest..].starts_with('(') {
            return Err(Error::Syntax {
                pos: rest,
                msg: "expected '('".into(),
            });
        }
        let close = text[rest..].find(')').ok_or(Error::Syntax {
            pos: rest,
            msg: "unclosed '('".into(),
        })? + rest;
        let inner = &text[rest + 1..close];
        if inner.contains('(') {
            return Err(Error::Syntax {
                pos: rest + 1 + inner.find('(').unwrap(),
                msg: "nested '('".into(),
            });
        }
        cycles.push(parse_numbers(inner, rest + 1)?);
        rest = close + 1;
    }
    Ok(cycles)
}

/// Multiset of cycle lengths of a permutation of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    n: usize,
    // only nonzero counts are stored
    counts: BTreeMap<usize, usize>,
}

impl CycleType {
    /// From `(length, count)` pairs; the degree is `Σ length·count`.
    pub fn from_counts<I: IntoIterator<Item = (usize, usize)>>(counts: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (d, c) in counts {
            if d == 0 {
                return Err(Error::Precondition("cycle length 0".into()));
            }
            if c > 0 {
                *map.entry(d).or_insert(0) += c;
            }
        }
        let n: usize = map.iter().map(|(d, c)| d * c).sum();
        if n == 0 {
            return Err(Error::Precondition("empty cycle type".into()));
        }
        Ok(CycleType { n, counts: map })
    }

    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        Self::from_counts(parts.iter().map(|&d| (d, 1)))
    }

    pub fn identity(n: usize) -> Self {
        CycleType {
            n,
            counts: BTreeMap::from([(1, n)]),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Nonzero `(length, count)` pairs, lengths ascending.
    pub fn counts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }

    /// Parts in descending order.
    pub fn parts_desc(&self) -> Vec<usize> {
        self.counts
            .iter()
            .rev()
            .flat_map(|(&d, &c)| std::iter::repeat(d).take(c))
            .collect()
    }

    /// Number of cycles of exact length `d`.
    pub fn c(&self, d: usize) -> usize {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    pub fn fix(&self) -> usize {
        self.c(1)
    }

    pub fn num_cycles(&self) -> usize {
        self.counts.values().sum()
    }

    /// Number of cycles whose length is divisible by `d`.
    pub fn m(&self, d: usize) -> usize {
        assert!(d >= 1);
        self.counts
            .iter()
            .filter(|(&len, _)| len % d == 0)
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn order(&self) -> u128 {
        self.counts.keys().fold(1u128, |acc, &d| lcm(acc, d as u128))
    }

    pub fn has_odd_cycle(&self) -> bool {
        self.counts.keys().any(|d| d % 2 == 1)
    }

    /// Cycle type of the `k`-th power: a cycle of length `L` splits into
    /// `gcd(L, k)` cycles of length `L / gcd(L, k)`.
    pub fn power(&self, k: u128) -> CycleType {
        let mut counts = BTreeMap::new();
        for (&len, &c) in &self.counts {
            let g = if k == 0 { len } else { gcd(len as u128, k) as usize };
            *counts.entry(len / g).or_insert(0) += c * g;
        }
        CycleType { n: self.n, counts }
    }

    pub fn is_conjugate(&self, other: &CycleType) -> Result<bool> {
        check_degree(self, other)?;
        Ok(self == other)
    }

    /// Canonical representative: cycles on consecutive points, longest first.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 1;
        for len in self.parts_desc() {
            cycles.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        Permutation::from_cycles(self.n, &cycles).expect("consecutive cycles are disjoint")
    }

    /// All cycle types of degree `n`, in decreasing lexicographic order of
    /// their descending part lists.
    pub fn enumerate(n: usize) -> Vec<CycleType> {
        fn go(remaining: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if remaining == 0 {
                out.push(CycleType::from_parts(parts).expect("nonempty partition"));
                return;
            }
            for part in (1..=max.min(remaining)).rev() {
                parts.push(part);
                go(remaining - part, part, parts, out);
                parts.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

pub(crate) fn check_degree(a: &CycleType, b: &CycleType) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DegreeMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(())
}

impl fmt::Display for CycleType {
    /// Bracket notation, lengths ascending, e.g. `[3^2,6^2,9,12^2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(d, &c)| if c == 1 { d.to_string() } else { format!("{d}^{c}") })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or(Error::Syntax {
                pos: 0,
                msg: "cycle type must look like [1^2,2]".into(),
            })?;
        let base = s.find('[').unwrap_or(0) + 1;
        let mut counts = Vec::new();
        let mut offset = 0;
        for item in inner.split(',') {
            let pos = base + offset;
            offset += item.len() + 1;
            let item = item.trim();
            let bad = |msg: &str| Error::Syntax {
                pos,
                msg: format!("{msg}: {item:?}"),
            };
            let (len, mult) = match item.split_once('^') {
                Some((l, m)) => (l.trim(), m.trim()),
                None => (item, "1"),
            };
            let len: usize = len.parse().map_err(|_| bad("bad cycle length"))?;
            let mult: usize = mult.parse().map_err(|_| bad("bad multiplicity"))?;
            if len == 0 {
                return Err(bad("cycle length must be positive"));
            }
            counts.push((len, mult));
        }
        CycleType::from_counts(counts)
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
