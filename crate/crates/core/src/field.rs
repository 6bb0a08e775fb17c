//! Finite fields GF(q) for q = r^k ≤ 256, by table lookup.
//!
//! An element is the integer whose base-`r` digits are the coefficients of
//! its polynomial representative, constant term least significant.

use crate::error::{GroupError, Result};

pub const MAX_FIELD_SIZE: u64 = 256;

pub type Elem = u16;

#[derive(Debug, Clone)]
pub struct Field {
    r: u32,
    k: u32,
    q: usize,
    /// Coefficients of the monic modulus, constant term first, length k+1.
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// `(r, k)` with `q = r^k`, `r` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let r = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(r) {
        rest /= r;
        k += 1;
    }
    (rest == 1).then_some((r, k))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn digits(mut x: usize, r: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (x % r as usize) as u32;
            x /= r as usize;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], r: u32) -> usize {
    ds.iter()
        .rev()
        .fold(0, |acc, &d| acc * r as usize + d as usize)
}

/// Remainder of `a` modulo the monic `m` over GF(r); both constant term first.
fn poly_rem(a: &[u32], m: &[u32], r: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let off = a.len() - dm;
            for i in 0..dm {
                a[off + i] = (a[off + i] + r - lead * m[i] % r) % r;
            }
        }
    }
    a
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(m: &[u32], r: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (r as usize).pow(d as u32);
        for low in 0..count {
            let mut f = digits(low, r, d as u32);
            f.push(1);
            if poly_rem(m, &f, r).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(q: u64) -> Result<Field> {
        let (r, k) = prime_power(q).ok_or(GroupError::NotPrimePower(q))?;
        if q > MAX_FIELD_SIZE {
            return Err(GroupError::TooLarge(format!("field of size {q}")));
        }
        let r = r as u32;
        let q = q as usize;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|low| {
                    let mut m = digits(low, r, k);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, r))
                .ok_or_else(|| GroupError::ConstructionCheck("no irreducible modulus".into()))?
        };

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, r, k);
            for b in 0..q {
                let db = digits(b, r, k);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % r).collect();
                add[a * q + b] = undigits(&sum, r) as Elem;
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % r;
                    }
                }
                mul[a * q + b] = undigits(&poly_rem(&prod, &modulus, r), r) as Elem;
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .ok_or_else(|| GroupError::ConstructionCheck("zero divisor".into()))?
                    as Elem;
            }
        }
        let field = Field {
            r,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        };
        if field.primitive_element().is_none() {
            return Err(GroupError::ConstructionCheck(
                "multiplicative group is not cyclic".into(),
            ));
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.r
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(GroupError::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn multiplicative_order(&self, a: Elem) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// The least element of multiplicative order q − 1.
    pub fn primitive_element(&self) -> Option<Elem> {
        (1..self.q as Elem).find(|&a| self.multiplicative_order(a) == Some(self.q as u64 - 1))
    }
}

/// Rank of a matrix over the prime field GF(r), rows given as vectors.
pub fn rank_mod(rows: &[Vec<i64>], r: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|row| row.iter().map(|x| x.rem_euclid(r)).collect())
        .collect();
    let cols = m.first().map_or(0, |row| row.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = mod_inverse(m[rank][c], r);
        for x in m[rank].iter_mut() {
            *x = *x * inv % r;
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(r);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, r: i64) -> i64 {
    (1..r)
        .find(|&b| a * b % r == 1)
        .expect("nonzero mod a prime")
}
