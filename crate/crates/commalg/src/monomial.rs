//! Exponent vectors ordered by graded reverse lexicographic order.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_VARS: usize = 16;

/// A monomial `x_0^{e_0} ... x_{k-1}^{e_{k-1}}` in at most [`MAX_VARS`] variables.
///
/// Unused trailing slots are zero, so monomials of rings with fewer variables
/// compare and multiply correctly without knowing the variable count.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            let e = u8::try_from(e).expect("exponent exceeds 255");
            m.exps[i] = e;
            m.deg += e as u16;
        }
        m
    }

    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i` is set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        out.deg = self.deg + other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.exps[i] -= self.exps[i];
        }
        out.deg = other.deg - self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u16;
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support_mask() & other.support_mask() == 0
    }

    /// Removes all powers of variable `i`.
    pub fn without_var(&self, i: usize) -> Monomial {
        let mut out = *self;
        out.deg -= out.exps[i] as u16;
        out.exps[i] = 0;
        out
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut out = *self;
        out.deg = out.deg - out.exps[i] as u16 + e as u16;
        out.exps[i] = e as u8;
        out
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic order with `x_0 > x_1 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        assert!(x > y && y > z);
        // x*z < y^2 in grevlex
        assert!(x.mul(&z) < y.mul(&y));
        assert!(x.mul(&x) > x.mul(&y));
        assert!(z.mul(&z) > x);
    }

    #[test]
    fn divisibility() {
        let a = Monomial::from_exponents(&[1, 2, 0]);
        let b = Monomial::from_exponents(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Monomial::from_exponents(&[1, 0, 1]));
        assert_eq!(a.lcm(&Monomial::var(2)), Monomial::from_exponents(&[1, 2, 1]));
    }
}
