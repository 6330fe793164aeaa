//! `SL(2, Z)` matrices and their Möbius action.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `[[a, b], [c, d]]` with `ad − bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaMat {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl GammaMat {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(GammaMat { a, b, c, d })
    }

    pub const IDENTITY: GammaMat = GammaMat {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const S: GammaMat = GammaMat {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    pub const T: GammaMat = GammaMat {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn mul(&self, o: &GammaMat) -> GammaMat {
        GammaMat {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> GammaMat {
        GammaMat {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `γτ = (aτ + b)/(cτ + d)`.
    pub fn apply(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / self.j_factor(tau)
    }

    /// `cτ + d`.
    pub fn j_factor(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    /// Parses `S`, `T`, `I`, `ST`-style words or `a,b,c,d`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(',') {
            let v: Vec<i64> = s
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad matrix {s:?}")))?;
            if v.len() != 4 {
                return Err(Error::Parse(format!(
                    "matrix needs 4 entries, got {}",
                    v.len()
                )));
            }
            return GammaMat::new(v[0], v[1], v[2], v[3]);
        }
        let mut m = GammaMat::IDENTITY;
        for ch in s.chars() {
            m = m.mul(&match ch {
                'S' => GammaMat::S,
                'T' => GammaMat::T,
                'I' => GammaMat::IDENTITY,
                _ => return Err(Error::Parse(format!("bad matrix word {s:?}"))),
            });
        }
        Ok(m)
    }
}

impl fmt::Display for GammaMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// `(g, h) ↦ (x a + y c, x b + y d)` on exponent vectors.
pub fn act_exponents(x: i64, y: i64, g: &GammaMat) -> (i64, i64) {
    (x * g.a + y * g.c, x * g.b + y * g.d)
}

/// For `(a, c)` generating `Z/n`, finds `γ` with `(a, c)γ ≡ (0, e) mod n`
/// and `gcd(e, n) = 1`.
pub fn reduce_cyclic_pair(a: i64, c: i64, n: i64) -> Result<(GammaMat, i64)> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "modulus {n} must be positive"
        )));
    }
    let a0 = a.rem_euclid(n);
    let c0 = c.rem_euclid(n);
    if a0.gcd(&c0).gcd(&n) != 1 {
        return Err(Error::NotGenerating(a, c, n));
    }
    if a0 == 0 {
        return Ok((GammaMat::IDENTITY, c0));
    }
    // lift c to an integer coprime to a; one exists among c0 + t n, t < a0 + 1
    let lifted = (0..=a0)
        .map(|t| c0 + t * n)
        .find(|cc| a0.gcd(cc) == 1)
        .ok_or(Error::NotGenerating(a, c, n))?;
    // [[C, B], [−A, D]] with C D + A B = 1 sends (A, C) to (0, 1)
    let eg = lifted.extended_gcd(&a0);
    debug_assert_eq!(eg.gcd, 1);
    let (d, b) = (eg.x, eg.y);
    let g = GammaMat::new(lifted, b, -a0, d)?;
    let (first, e) = act_exponents(a0, lifted, &g);
    debug_assert_eq!(first, 0);
    Ok((g, e.rem_euclid(n)))
}
