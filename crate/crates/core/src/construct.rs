//! Named groups as concrete permutation groups, and the textual spec grammar.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{GroupError, Result};
use crate::field::{prime_power, Elem, Field};
use crate::group::Group;
use crate::perm::{gcd, Permutation};

fn checked(group: Group, expected: u64, name: &str) -> Result<Group> {
    if group.order() != expected {
        return Err(GroupError::ConstructionCheck(format!(
            "{name}: order {} but expected {expected}",
            group.order()
        )));
    }
    Ok(group)
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(&images).expect("constructor produced a bijection")
}

/// Left regular representation of a group on `0..n` given by its product.
fn regular(n: usize, gens: &[usize], product: impl Fn(usize, usize) -> usize) -> Result<Group> {
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|&g| perm((0..n).map(|x| product(g, x)).collect()))
        .collect();
    Group::from_generators(n, &perms)
}

pub fn cyclic(m: usize) -> Result<Group> {
    if m == 0 {
        return Err(GroupError::Range("cyclic order must be positive".into()));
    }
    let gens = if m == 1 {
        vec![]
    } else {
        vec![perm((0..m).map(|i| (i + 1) % m).collect())]
    };
    checked(Group::from_generators(m, &gens)?, m as u64, "cyclic")
}

/// Dihedral group of order `two_n`; order 2 is C₂ and order 4 the Klein four group.
pub fn dihedral(two_n: usize) -> Result<Group> {
    if two_n < 2 || !two_n.is_multiple_of(2) {
        return Err(GroupError::Range(format!(
            "dihedral order {two_n} must be even and at least 2"
        )));
    }
    let n = two_n / 2;
    let group = match n {
        1 => Group::from_generators(2, &[perm(vec![1, 0])])?,
        2 => Group::from_generators(4, &[perm(vec![1, 0, 3, 2]), perm(vec![2, 3, 0, 1])])?,
        _ => {
            let rot = perm((0..n).map(|i| (i + 1) % n).collect());
            let refl = perm((0..n).map(|i| (n - i) % n).collect());
            Group::from_generators(n, &[rot, refl])?
        }
    };
    checked(group, two_n as u64, "dihedral")
}

fn check_two_power(two_k: usize, min: usize, what: &str) -> Result<()> {
    if two_k < min || !two_k.is_power_of_two() {
        return Err(GroupError::Range(format!(
            "{what} order {two_k} must be a power of two at least {min}"
        )));
    }
    Ok(())
}

/// `⟨x, y | x^n, y x y⁻¹ = x^s, y² = x^c⟩` of order 2n, elements `x^i y^j` at `i + n j`.
fn metacyclic(n: usize, s: usize, c: usize) -> Result<Group> {
    let product = move |a: usize, b: usize| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let twisted = if j == 1 { k * s % n } else { k };
        let mut e = (i + twisted) % n;
        let mut y = j + l;
        if y == 2 {
            e = (e + c) % n;
            y = 0;
        }
        e + n * y
    };
    regular(2 * n, &[1, n], product)
}

pub fn quaternion(two_k: usize) -> Result<Group> {
    check_two_power(two_k, 8, "quaternion")?;
    let n = two_k / 2;
    checked(metacyclic(n, n - 1, n / 2)?, two_k as u64, "quaternion")
}

pub fn semidihedral(two_k: usize) -> Result<Group> {
    check_two_power(two_k, 16, "semidihedral")?;
    let n = two_k / 2;
    checked(metacyclic(n, n / 2 - 1, 0)?, two_k as u64, "semidihedral")
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub const MAX_SYMMETRIC_DEGREE: usize = 20;

pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(GroupError::Range(format!("alternating degree {n}")));
    }
    let gens: Vec<Permutation> = (2..n)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]).unwrap())
        .collect();
    let expected = if n < 2 { 1 } else { factorial(n) / 2 };
    checked(Group::from_generators(n, &gens)?, expected, "alternating")
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(GroupError::Range(format!("symmetric degree {n}")));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm((0..n).map(|i| (i + 1) % n).collect()));
        gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
    }
    checked(Group::from_generators(n, &gens)?, factorial(n), "symmetric")
}

pub const MIN_LINEAR_Q: u64 = 4;
pub const MAX_LINEAR_Q: u64 = 64;

fn linear_field(q: u64) -> Result<Field> {
    if prime_power(q).is_none() {
        return Err(GroupError::NotPrimePower(q));
    }
    if q > MAX_LINEAR_Q {
        return Err(GroupError::TooLarge(format!("q = {q}")));
    }
    if q < MIN_LINEAR_Q {
        return Err(GroupError::Range(format!("q = {q} below {MIN_LINEAR_Q}")));
    }
    Field::new(q)
}

/// `z ↦ (a z + b) / (c z + d)` on the projective line; `∞` is point `q`.
fn mobius(f: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Permutation {
    let q = f.size();
    let images = (0..=q)
        .map(|z| {
            let (num, den) = if z == q {
                (a, c)
            } else {
                let z = z as Elem;
                (f.add(f.mul(a, z), b), f.add(f.mul(c, z), d))
            };
            if den == 0 {
                q
            } else {
                f.mul(num, f.inv(den).unwrap()) as usize
            }
        })
        .collect();
    perm(images)
}

fn projective_gens(f: &Field, full: bool) -> Vec<Permutation> {
    let w = f
        .primitive_element()
        .expect("finite field has a primitive element");
    let w_inv = f.inv(w).unwrap();
    let minus_one = f.neg(1);
    let mut gens = vec![
        mobius(f, 1, 1, 0, 1),
        mobius(f, w, 0, 0, w_inv),
        mobius(f, 0, minus_one, 1, 0),
    ];
    if full {
        gens.push(mobius(f, w, 0, 0, 1));
    }
    gens
}

pub fn psl2(q: u64) -> Result<Group> {
    let f = linear_field(q)?;
    let expected = q * (q * q - 1) / gcd(2, q - 1);
    let group = Group::from_generators(q as usize + 1, &projective_gens(&f, false))?;
    checked(group, expected, "PSL(2,q)")
}

pub fn pgl2(q: u64) -> Result<Group> {
    let f = linear_field(q)?;
    let group = Group::from_generators(q as usize + 1, &projective_gens(&f, true))?;
    checked(group, q * (q * q - 1), "PGL(2,q)")
}

/// PSL(3,4) on the 21 points of the projective plane over GF(4).
pub fn psl3_4() -> Result<Group> {
    let f = Field::new(4)?;
    let mut points: Vec<[Elem; 3]> = Vec::new();
    for lead in 0..3 {
        let free = 2 - lead;
        for code in 0..4usize.pow(free as u32) {
            let mut v = [0 as Elem; 3];
            v[lead] = 1;
            for i in 0..free {
                v[lead + 1 + i] = ((code >> (2 * i)) & 3) as Elem;
            }
            points.push(v);
        }
    }
    let index: HashMap<[Elem; 3], usize> =
        points.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let normalize = |v: [Elem; 3]| -> [Elem; 3] {
        let lead = v.iter().copied().find(|&x| x != 0).expect("nonzero vector");
        let s = f.inv(lead).unwrap();
        v.map(|x| f.mul(s, x))
    };
    let w = f.primitive_element().unwrap();
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for lambda in [1, w] {
                // v ↦ (I + λ e_ij) v
                let images = points
                    .iter()
                    .map(|v| {
                        let mut u = *v;
                        u[i] = f.add(u[i], f.mul(lambda, v[j]));
                        index[&normalize(u)]
                    })
                    .collect();
                gens.push(perm(images));
            }
        }
    }
    checked(Group::from_generators(21, &gens)?, 20160, "PSL(3,4)")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InversionKernel {
    /// The maximal cyclic subgroup of the dihedral group acts trivially.
    Cyclic,
    /// A dihedral subgroup of index 2 containing a Klein four group acts trivially.
    Klein,
}

/// `A ⋊ D` with `A = C_m` (m odd) and `D` dihedral of order `two_k` acting by
/// inversion through a character with the chosen kernel.
pub fn abelian_by_dihedral_inversion(
    m: usize,
    two_k: usize,
    kernel: InversionKernel,
) -> Result<Group> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(GroupError::Range(format!(
            "m = {m} must be odd and positive"
        )));
    }
    check_two_power(two_k, 8, "dihedral")?;
    let n = two_k / 2;
    // (a, r, s) ↔ a + m (r + n s), with d = ρ^r σ^s
    let decode = move |x: usize| (x % m, (x / m) % n, x / (m * n));
    let chi = move |r: usize, s: usize| -> bool {
        match kernel {
            InversionKernel::Cyclic => s == 1,
            InversionKernel::Klein => r % 2 == 1,
        }
    };
    let product = move |x: usize, y: usize| {
        let (a1, r1, s1) = decode(x);
        let (a2, r2, s2) = decode(y);
        let a = if chi(r1, s1) {
            (a1 + m - a2) % m
        } else {
            (a1 + a2) % m
        };
        let r = if s1 == 1 {
            (r1 + n - r2) % n
        } else {
            (r1 + r2) % n
        };
        let s = (s1 + s2) % 2;
        a + m * (r + n * s)
    };
    let mut gens = vec![m, m * n];
    if m > 1 {
        gens.push(1);
    }
    let group = regular(m * two_k, &gens, product)?;
    checked(group, (m * two_k) as u64, "inversion semidirect product")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TopGroup {
    A4,
    S4,
}

pub const DELPERM_PRIMES: [u64; 4] = [5, 7, 11, 13];

/// Affine group `M ⋊ T` on the zero-sum vectors `M ≤ GF(r)⁴`, with `T ∈ {A₄, S₄}`
/// permuting coordinates, optionally twisted by the sign character.
pub fn deleted_perm_semidirect(r: u64, top: TopGroup, sign_twist: bool) -> Result<Group> {
    if !DELPERM_PRIMES.contains(&r) {
        return Err(GroupError::Range(format!(
            "r = {r} not in {DELPERM_PRIMES:?}"
        )));
    }
    if sign_twist && top == TopGroup::A4 {
        return Err(GroupError::Range("the sign twist is trivial on A4".into()));
    }
    let r = r as usize;
    let n = r * r * r;
    let decode = |x: usize| -> [usize; 4] {
        let v = [x % r, (x / r) % r, x / (r * r)];
        [v[0], v[1], v[2], (3 * r - v[0] - v[1] - v[2]) % r]
    };
    let encode = |v: [usize; 4]| v[0] + r * v[1] + r * r * v[2];

    let mut gens = Vec::new();
    for i in 0..3 {
        // translation by e_i − e_3
        let images = (0..n)
            .map(|x| {
                let mut v = decode(x);
                v[i] = (v[i] + 1) % r;
                v[3] = (v[3] + r - 1) % r;
                encode(v)
            })
            .collect();
        gens.push(perm(images));
    }
    let tops: Vec<Vec<usize>> = match top {
        TopGroup::A4 => vec![vec![1, 2, 0, 3], vec![0, 2, 3, 1]],
        TopGroup::S4 => vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]],
    };
    for pi in tops {
        let odd = !Permutation::from_images(&pi).unwrap().is_even();
        let negate = sign_twist && odd;
        let images = (0..n)
            .map(|x| {
                let v = decode(x);
                let mut u = [0; 4];
                for i in 0..4 {
                    u[pi[i]] = if negate { (r - v[i]) % r } else { v[i] };
                }
                encode(u)
            })
            .collect();
        gens.push(perm(images));
    }
    let top_order = match top {
        TopGroup::A4 => 12,
        TopGroup::S4 => 24,
    };
    checked(
        Group::from_generators(n, &gens)?,
        (n * top_order) as u64,
        "deleted permutation module extension",
    )
}

/// `G₁ × G₂` acting on the disjoint union of the two point sets.
pub fn direct_product(g1: &Group, g2: &Group) -> Result<Group> {
    let (n1, n2) = (g1.degree(), g2.degree());
    let mut gens = Vec::new();
    for g in g1.generators() {
        gens.push(perm(
            (0..n1).map(|x| g.image(x)).chain(n1..n1 + n2).collect(),
        ));
    }
    for g in g2.generators() {
        gens.push(perm(
            (0..n1).chain((0..n2).map(|x| n1 + g.image(x))).collect(),
        ));
    }
    let expected = g1
        .order()
        .checked_mul(g2.order())
        .ok_or_else(|| GroupError::TooLarge("product order".into()))?;
    checked(
        Group::from_generators(n1 + n2, &gens)?,
        expected,
        "direct product",
    )
}

/// A parsed construction request.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Semidihedral(usize),
    Alternating(usize),
    Symmetric(usize),
    Psl2(u64),
    Pgl2(u64),
    Psl34,
    Inversion {
        m: usize,
        two_k: usize,
        kernel: InversionKernel,
    },
    DeletedPerm {
        r: u64,
        top: TopGroup,
        sign: bool,
    },
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        match self {
            GroupSpec::Cyclic(m) => cyclic(*m),
            GroupSpec::Dihedral(n) => dihedral(*n),
            GroupSpec::Quaternion(n) => quaternion(*n),
            GroupSpec::Semidihedral(n) => semidihedral(*n),
            GroupSpec::Alternating(n) => alternating(*n),
            GroupSpec::Symmetric(n) => symmetric(*n),
            GroupSpec::Psl2(q) => psl2(*q),
            GroupSpec::Pgl2(q) => pgl2(*q),
            GroupSpec::Psl34 => psl3_4(),
            GroupSpec::Inversion { m, two_k, kernel } => {
                abelian_by_dihedral_inversion(*m, *two_k, *kernel)
            }
            GroupSpec::DeletedPerm { r, top, sign } => deleted_perm_semidirect(*r, *top, *sign),
            GroupSpec::Product(a, b) => direct_product(&a.build()?, &b.build()?),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "C:{m}"),
            GroupSpec::Dihedral(n) => write!(f, "D:{n}"),
            GroupSpec::Quaternion(n) => write!(f, "Q:{n}"),
            GroupSpec::Semidihedral(n) => write!(f, "SD:{n}"),
            GroupSpec::Alternating(n) => write!(f, "A:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S:{n}"),
            GroupSpec::Psl2(q) => write!(f, "PSL2:{q}"),
            GroupSpec::Pgl2(q) => write!(f, "PGL2:{q}"),
            GroupSpec::Psl34 => write!(f, "PSL3_4"),
            GroupSpec::Inversion { m, two_k, kernel } => {
                let k = match kernel {
                    InversionKernel::Cyclic => "cyclic",
                    InversionKernel::Klein => "klein",
                };
                write!(f, "INV:{m}:{two_k}:{k}")
            }
            GroupSpec::DeletedPerm { r, top, sign } => {
                let t = match top {
                    TopGroup::A4 => "A4",
                    TopGroup::S4 => "S4",
                };
                write!(f, "DELPERM:{r}:{t}")?;
                if *sign {
                    write!(f, ":sign")?;
                }
                Ok(())
            }
            GroupSpec::Product(a, b) => write!(f, "PROD:({a})x({b})"),
        }
    }
}

fn parse_num<T: FromStr>(s: &str, whole: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| GroupError::Parse(format!("bad number {s:?} in {whole:?}")))
}

/// Splits `(a)x(b)` at the top-level `x`.
fn split_product(body: &str, whole: &str) -> Result<(String, String)> {
    let err = || GroupError::Parse(format!("expected (spec)x(spec) in {whole:?}"));
    let mut depth = 0usize;
    let mut close = None;
    if !body.starts_with('(') {
        return Err(err());
    }
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(err)?;
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let close = close.ok_or_else(err)?;
    let left = &body[1..close];
    let rest = body[close + 1..].trim_start();
    let right = rest
        .strip_prefix('x')
        .map(str::trim)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(err)?;
    Ok((left.to_string(), right.to_string()))
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(text: &str) -> Result<GroupSpec> {
        let s = text.trim();
        if s == "PSL3_4" {
            return Ok(GroupSpec::Psl34);
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| GroupError::Parse(format!("unknown group spec {s:?}")))?;
        if kind == "PROD" {
            let (a, b) = split_product(rest.trim(), s)?;
            return Ok(GroupSpec::Product(
                Box::new(a.parse()?),
                Box::new(b.parse()?),
            ));
        }
        let parts: Vec<&str> = rest.split(':').map(str::trim).collect();
        let single = |parts: &[&str]| -> Result<usize> {
            match parts {
                [x] => parse_num(x, s),
                _ => Err(GroupError::Parse(format!(
                    "expected one parameter in {s:?}"
                ))),
            }
        };
        let spec = match kind {
            "C" => GroupSpec::Cyclic(single(&parts)?),
            "D" => GroupSpec::Dihedral(single(&parts)?),
            "Q" => GroupSpec::Quaternion(single(&parts)?),
            "SD" => GroupSpec::Semidihedral(single(&parts)?),
            "A" => GroupSpec::Alternating(single(&parts)?),
            "S" => GroupSpec::Symmetric(single(&parts)?),
            "PSL2" => GroupSpec::Psl2(single(&parts)? as u64),
            "PGL2" => GroupSpec::Pgl2(single(&parts)? as u64),
            "INV" => match parts.as_slice() {
                [m, k, kernel] => GroupSpec::Inversion {
                    m: parse_num(m, s)?,
                    two_k: parse_num(k, s)?,
                    kernel: match kernel.to_ascii_lowercase().as_str() {
                        "cyclic" => InversionKernel::Cyclic,
                        "klein" => InversionKernel::Klein,
                        _ => return Err(GroupError::Parse(format!("bad kernel in {s:?}"))),
                    },
                },
                _ => {
                    return Err(GroupError::Parse(format!(
                        "expected INV:m:2^k:kernel, got {s:?}"
                    )))
                }
            },
            "DELPERM" => {
                let (r, top, sign) = match parts.as_slice() {
                    [r, t] => (r, t, false),
                    [r, t, flag] if flag.eq_ignore_ascii_case("sign") => (r, t, true),
                    _ => {
                        return Err(GroupError::Parse(format!(
                            "expected DELPERM:r:A4|S4[:sign], got {s:?}"
                        )))
                    }
                };
                let top = match top.to_ascii_uppercase().as_str() {
                    "A4" => TopGroup::A4,
                    "S4" => TopGroup::S4,
                    _ => return Err(GroupError::Parse(format!("bad top group in {s:?}"))),
                };
                GroupSpec::DeletedPerm {
                    r: parse_num(r, s)?,
                    top,
                    sign,
                }
            }
            _ => return Err(GroupError::Parse(format!("unknown group kind {kind:?}"))),
        };
        Ok(spec)
    }
}

/// Parses and builds in one step.
pub fn build(spec: &str) -> Result<Group> {
    spec.parse::<GroupSpec>()?.build()
}
