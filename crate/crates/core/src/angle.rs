//! Exact rational multiples of π.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::real::Real;

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The angle `num·π/den`, kept in lowest terms with `0 < num/den <= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AngleFrac {
    num: u32,
    den: u32,
}

/// Result of adding two angles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleSum {
    Angle(AngleFrac),
    Flat,
    Reflex,
}

impl AngleFrac {
    /// `num·π/den`. Panics unless `0 < num <= den`.
    pub fn new(num: u32, den: u32) -> Self {
        assert!(num >= 1 && den >= 1 && num <= den, "angle {num}/{den} out of range");
        let g = gcd(num, den);
        AngleFrac { num: num / g, den: den / g }
    }

    pub fn try_new(num: u32, den: u32) -> Option<Self> {
        (num >= 1 && den >= 1 && num <= den).then(|| Self::new(num, den))
    }

    /// `π/k`.
    pub fn pi_over(k: u32) -> Self {
        Self::new(1, k)
    }

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    /// True for π/k.
    pub fn is_coxeter(self) -> bool {
        self.num == 1
    }

    pub fn is_flat(self) -> bool {
        self.num == self.den
    }

    pub fn add(self, other: AngleFrac) -> AngleSum {
        let n = self.num as u64 * other.den as u64 + other.num as u64 * self.den as u64;
        let d = self.den as u64 * other.den as u64;
        match n.cmp(&d) {
            Ordering::Less => {
                let g = {
                    let (mut a, mut b) = (n, d);
                    while b != 0 {
                        let t = a % b;
                        a = b;
                        b = t;
                    }
                    a
                };
                AngleSum::Angle(AngleFrac { num: (n / g) as u32, den: (d / g) as u32 })
            }
            Ordering::Equal => AngleSum::Flat,
            Ordering::Greater => AngleSum::Reflex,
        }
    }

    pub fn radians<T: Real>(self) -> T {
        T::PI() * T::lit(self.num as f64) / T::lit(self.den as f64)
    }

    /// Cosine with exact shortcuts where the value is rational.
    pub fn cos<T: Real>(self) -> T {
        match (self.num, self.den) {
            (1, 2) => T::zero(),
            (1, 3) => T::lit(0.5),
            (2, 3) => T::lit(-0.5),
            (1, 1) => -T::one(),
            _ => self.radians::<T>().cos(),
        }
    }

    pub fn sin<T: Real>(self) -> T {
        match (self.num, self.den) {
            (1, 2) => T::one(),
            (1, 6) | (5, 6) => T::lit(0.5),
            (1, 1) => T::zero(),
            _ => self.radians::<T>().sin(),
        }
    }

    /// Recover an angle from radians when it is `num·π/den` with `den <= max_den`.
    pub fn from_radians(x: f64, max_den: u32, tol: f64) -> Option<Self> {
        let r = x / std::f64::consts::PI;
        (1..=max_den).find_map(|den| {
            let num = (r * den as f64).round();
            if num >= 1.0 && num <= den as f64 && (r * den as f64 - num).abs() < tol * den as f64 {
                Some(AngleFrac::new(num as u32, den))
            } else {
                None
            }
        })
    }
}

impl PartialOrd for AngleFrac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AngleFrac {
    /// Orders by value.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u64 * other.den as u64).cmp(&(other.num as u64 * self.den as u64))
    }
}

impl fmt::Debug for AngleFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π/{}", self.num, self.den)
    }
}

impl fmt::Display for AngleFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 1 {
            write!(f, "π/{}", self.den)
        } else {
            write!(f, "{}π/{}", self.num, self.den)
        }
    }
}

/// A container edge split into `parts` wedges of the tile angle `π/label`.
///
/// Unlike [`AngleFrac`] this is not reduced: 2·π/4 and 1·π/2 are different marks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeMark {
    pub parts: u32,
    pub label: u32,
}

impl EdgeMark {
    pub fn fundamental(label: u32) -> Self {
        EdgeMark { parts: 1, label }
    }

    pub fn angle(self) -> AngleFrac {
        AngleFrac::new(self.parts, self.label)
    }

    pub fn is_fundamental(self) -> bool {
        self.parts == 1
    }
}

impl fmt::Display for EdgeMark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.parts, self.label)
    }
}
