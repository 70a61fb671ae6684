//! Finite unions of rational intervals in canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::PosInf => f.write_str("inf"),
            Bound::Finite(q) => f.write_str(&format_rational(q)),
        }
    }
}

/// One piece; a point is the closed interval `[a,a]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Bound,
    pub lo_closed: bool,
    pub hi: Bound,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Bound, lo_closed: bool, hi: Bound, hi_closed: bool) -> Self {
        let lo_closed = lo_closed && matches!(lo, Bound::Finite(_));
        let hi_closed = hi_closed && matches!(hi, Bound::Finite(_));
        Self { lo, lo_closed, hi, hi_closed }
    }

    pub fn point(q: Rational) -> Self {
        Self::new(Bound::Finite(q.clone()), true, Bound::Finite(q), true)
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Less => false,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi && !self.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let b = Bound::Finite(x.clone());
        let above = match self.lo.cmp(&b) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match b.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    fn cmp_lo(&self, other: &Self) -> Ordering {
        self.lo.cmp(&other.lo).then_with(|| other.lo_closed.cmp(&self.lo_closed))
    }

    fn cmp_hi(&self, other: &Self) -> Ordering {
        self.hi.cmp(&other.hi).then_with(|| self.hi_closed.cmp(&other.hi_closed))
    }

    fn intersect(&self, other: &Self) -> Self {
        let lo = if self.cmp_lo(other) == Ordering::Less { other } else { self };
        let hi = if self.cmp_hi(other) == Ordering::Less { self } else { other };
        Self::new(lo.lo.clone(), lo.lo_closed, hi.hi.clone(), hi.hi_closed)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{},{}{r}", self.lo, self.hi)
    }
}

/// Sorted, pairwise disjoint, non-adjacent nonempty pieces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolicSet {
    pieces: Vec<Interval>,
}

impl SymbolicSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pieces(pieces: Vec<Interval>) -> Self {
        let mut pieces: Vec<Interval> = pieces.into_iter().filter(|p| !p.is_empty()).collect();
        pieces.sort_by(|a, b| a.cmp_lo(b).then_with(|| a.cmp_hi(b)));
        let mut out: Vec<Interval> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(last) = out.last_mut() {
                let touches = match p.lo.cmp(&last.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => last.hi_closed || p.lo_closed,
                    Ordering::Greater => false,
                };
                if touches {
                    if p.cmp_hi(last) == Ordering::Greater {
                        last.hi = p.hi;
                        last.hi_closed = p.hi_closed;
                    }
                    continue;
                }
            }
            out.push(p);
        }
        Self { pieces: out }
    }

    pub fn interval(lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool) -> Self {
        Self::from_pieces(vec![Interval::new(Bound::Finite(lo), lo_closed, Bound::Finite(hi), hi_closed)])
    }

    /// `[lo, hi]`.
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::interval(lo, true, hi, true)
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: Rational, hi: Rational) -> Self {
        Self::interval(lo, true, hi, false)
    }

    pub fn points<I: IntoIterator<Item = Rational>>(points: I) -> Self {
        Self::from_pieces(points.into_iter().map(Interval::point).collect())
    }

    pub fn everything() -> Self {
        Self::from_pieces(vec![Interval::new(Bound::NegInf, false, Bound::PosInf, false)])
    }

    pub fn pieces(&self) -> &[Interval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_pieces(self.pieces.iter().chain(&other.pieces).cloned().collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                out.push(a.intersect(b));
            }
        }
        Self::from_pieces(out)
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut lo = Bound::NegInf;
        let mut lo_closed = false;
        for p in &self.pieces {
            out.push(Interval::new(lo, lo_closed, p.lo.clone(), !p.lo_closed));
            lo = p.hi.clone();
            lo_closed = !p.hi_closed;
        }
        out.push(Interval::new(lo, lo_closed, Bound::PosInf, false));
        Self::from_pieces(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Lower endpoint of the first piece.
    pub fn inf(&self) -> Option<&Bound> {
        self.pieces.first().map(|p| &p.lo)
    }

    /// Upper endpoint of the last piece.
    pub fn sup(&self) -> Option<&Bound> {
        self.pieces.last().map(|p| &p.hi)
    }

    /// Up to `per_piece` rational points of every piece: closed endpoints,
    /// points approaching the upper end geometrically, and uniform draws.
    pub fn probe_points<R: Rng>(&self, per_piece: usize, rng: &mut R) -> Vec<Rational> {
        let mut out = Vec::new();
        for p in &self.pieces {
            if p.is_point() {
                out.push(p.lo.finite().unwrap().clone());
                continue;
            }
            let mut local = Vec::new();
            if p.lo_closed {
                local.push(p.lo.finite().unwrap().clone());
            }
            if p.hi_closed {
                local.push(p.hi.finite().unwrap().clone());
            }
            let (a, b) = match (&p.lo, &p.hi) {
                (Bound::Finite(a), Bound::Finite(b)) => (a.clone(), b.clone()),
                (Bound::Finite(a), _) => (a.clone(), a + int(1 << 20)),
                (_, Bound::Finite(b)) => (b - int(1 << 20), b.clone()),
                _ => (int(-(1 << 20)), int(1 << 20)),
            };
            let width = &b - &a;
            let mut j = 1u32;
            while local.len() < per_piece {
                let x = if local.len() % 2 == 0 {
                    let k = j.min(60);
                    j += 1;
                    &b - &width / int(1i64 << k)
                } else {
                    let den: i64 = 1 << rng.gen_range(1..40);
                    let num = rng.gen_range(1..den);
                    &a + &width * Rational::new(num.into(), den.into())
                };
                if p.contains(&x) {
                    local.push(x);
                } else if j > 200 {
                    break;
                }
            }
            local.truncate(per_piece.max(1));
            out.extend(local);
        }
        out
    }
}

impl fmt::Display for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("{}");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut points: Vec<String> = Vec::new();
        let flush = |points: &mut Vec<String>, parts: &mut Vec<String>| {
            if !points.is_empty() {
                parts.push(format!("{{{}}}", points.join(",")));
                points.clear();
            }
        };
        for p in &self.pieces {
            if p.is_point() {
                points.push(p.lo.to_string());
            } else {
                flush(&mut points, &mut parts);
                parts.push(p.to_string());
            }
        }
        flush(&mut points, &mut parts);
        f.write_str(&parts.join(" u "))
    }
}

fn parse_bound(t: &str) -> Result<Bound> {
    match t.trim() {
        "-inf" => Ok(Bound::NegInf),
        "inf" | "+inf" => Ok(Bound::PosInf),
        other => Ok(Bound::Finite(parse_rational(other)?)),
    }
}

impl FromStr for SymbolicSet {
    type Err = Error;

    /// Parses the rendering of [`fmt::Display`], e.g. `[0,1/2) u {2,3}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "{}" {
            return Ok(Self::empty());
        }
        let bad = |m: &str| Error::Parse { line: 1, message: format!("{m} in `{s}`") };
        let mut pieces = Vec::new();
        for part in s.split(" u ") {
            let part = part.trim();
            if let Some(inner) = part.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
                for q in inner.split(',') {
                    pieces.push(Interval::point(parse_rational(q.trim())?));
                }
                continue;
            }
            let lo_closed = match part.chars().next() {
                Some('[') => true,
                Some('(') => false,
                _ => return Err(bad("expected `[`, `(` or `{`")),
            };
            let hi_closed = match part.chars().last() {
                Some(']') => true,
                Some(')') => false,
                _ => return Err(bad("expected `]` or `)`")),
            };
            let body = &part[1..part.len() - 1];
            let (a, b) = body.split_once(',').ok_or_else(|| bad("expected two endpoints"))?;
            let piece = Interval::new(parse_bound(a)?, lo_closed, parse_bound(b)?, hi_closed);
            if piece.is_empty() {
                return Err(bad("empty interval"));
            }
            pieces.push(piece);
        }
        Ok(Self::from_pieces(pieces))
    }
}

impl Serialize for SymbolicSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymbolicSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `k` with `1 - 2^-k <= x < 1 - 2^-(k+1)`, for `0 <= x < 1`.
pub fn level(x: &Rational) -> Option<u32> {
    if x.is_negative() || *x >= Rational::one() {
        return None;
    }
    let gap = Rational::one() - x;
    let mut k = 0u32;
    let mut half = Rational::new(1.into(), 2.into());
    while gap <= half {
        k += 1;
        half /= int(2);
        if half.is_zero() {
            break;
        }
    }
    Some(k)
}

/// `1 - 2^-k`.
pub fn level_start(k: u32) -> Rational {
    Rational::one() - Rational::new(1.into(), num_bigint::BigInt::from(2).pow(k))
}
