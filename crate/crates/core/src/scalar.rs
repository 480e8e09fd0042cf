//! Exact scalars: rationals, Gaussian rationals and cyclotomic numbers.
//!
//! A cyclotomic number of order `n` is stored as a coefficient list in powers
//! of a primitive `n`-th root of unity, reduced modulo the `n`-th cyclotomic
//! polynomial. Rational values embed into every field, so arithmetic between
//! a `Rational` and any other variant promotes the rational operand. Mixing
//! two different non-rational fields is a programming error and panics.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ScalarParseError;

/// The field an algebra is defined over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Gaussian,
    /// `Q(ζ_n)` for the given order `n >= 1`.
    Cyclotomic(u32),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Gaussian => write!(f, "gaussian"),
            Field::Cyclotomic(n) => write!(f, "cyclotomic:{n}"),
        }
    }
}

impl FromStr for Field {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "rational" => Ok(Field::Rational),
            "gaussian" => Ok(Field::Gaussian),
            other => {
                let order = other
                    .strip_prefix("cyclotomic:")
                    .and_then(|n| n.trim().parse::<u32>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| ScalarParseError::UnknownField(s.to_string()))?;
                Ok(Field::Cyclotomic(order))
            }
        }
    }
}

/// Monic integer polynomial `Φ_n`, low degree first.
#[derive(Debug)]
pub struct CyclotomicModulus {
    order: u32,
    poly: Vec<BigInt>,
}

impl CyclotomicModulus {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of `Φ_n`, i.e. Euler's totient of the order.
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.poly
    }
}

fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic, division is exact for cyclotomic factors
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (t, d) in den.iter().enumerate() {
            rem[k + t] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn compute_cyclotomic(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d of n
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_modulus(d);
            poly = int_poly_div_exact(&poly, &phi_d.poly);
        }
    }
    poly
}

/// Returns the cached `Φ_n`.
pub fn cyclotomic_modulus(n: u32) -> Arc<CyclotomicModulus> {
    assert!(n >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicModulus>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&n) {
        return m.clone();
    }
    // computed outside the lock: the recursion re-enters the cache
    let modulus = Arc::new(CyclotomicModulus {
        order: n,
        poly: compute_cyclotomic(n),
    });
    cache
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(modulus)
        .clone()
}

/// Element of `Q(ζ_n)` in the power basis `1, ζ, ..., ζ^{φ(n)-1}`.
#[derive(Clone)]
pub struct Cyclotomic {
    modulus: Arc<CyclotomicModulus>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    fn new(modulus: Arc<CyclotomicModulus>, coeffs: Vec<BigRational>) -> Self {
        let mut c = Cyclotomic { modulus, coeffs };
        c.reduce();
        c
    }

    fn reduce(&mut self) {
        let m = &self.modulus.poly;
        let d = m.len() - 1;
        while self.coeffs.len() > d {
            let top = self.coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = self.coeffs.len() - d;
            for (t, mc) in m.iter().enumerate().take(d) {
                self.coeffs[shift + t] -= &top * BigRational::from_integer(mc.clone());
            }
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> u32 {
        self.modulus.order
    }

    /// Coefficients in the power basis, trailing zeros trimmed.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Cyclotomic::new(self.modulus.clone(), Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Cyclotomic::new(self.modulus.clone(), out)
    }

    fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
                match other.coeffs.get(k) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        Cyclotomic::new(self.modulus.clone(), out)
    }

    fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            modulus: self.modulus.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    fn conj(&self) -> Cyclotomic {
        let n = self.modulus.order as usize;
        let mut out = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[(n - k % n) % n] += c;
        }
        Cyclotomic::new(self.modulus.clone(), out)
    }

    /// Inverse via the extended Euclidean algorithm against `Φ_n`.
    fn inv(&self) -> Option<Cyclotomic> {
        if self.coeffs.is_empty() {
            return None;
        }
        let modulus: Vec<BigRational> = self
            .modulus
            .poly
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // invariant: s * self ≡ r (mod Φ)
        let (mut r0, mut r1) = (modulus, self.coeffs.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ_n is irreducible
        debug_assert_eq!(r0.len(), 1);
        let lead = r0[0].clone();
        let coeffs = s0.into_iter().map(|c| c / &lead).collect();
        Some(Cyclotomic::new(self.modulus.clone(), coeffs))
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| {
                let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
                match b.get(k) {
                    Some(y) => x - y,
                    None => x,
                }
            })
            .collect(),
    )
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead = &b[db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (t, bc) in b.iter().enumerate() {
            rem[shift + t] -= &c * bc;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// An exact field element.
#[derive(Clone)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian { re: BigRational, im: BigRational },
    Cyclotomic(Cyclotomic),
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero(field: &Field) -> Self {
        Self::from_rational(BigRational::zero(), field)
    }

    pub fn one(field: &Field) -> Self {
        Self::from_rational(BigRational::one(), field)
    }

    pub fn from_int(n: i64, field: &Field) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()), field)
    }

    pub fn from_ratio(n: i64, d: i64, field: &Field) -> Self {
        Self::from_rational(ratio(n, d), field)
    }

    pub fn from_rational(r: BigRational, field: &Field) -> Self {
        match field {
            Field::Rational => Scalar::Rational(r),
            Field::Gaussian => Scalar::Gaussian {
                re: r,
                im: BigRational::zero(),
            },
            Field::Cyclotomic(n) => {
                Scalar::Cyclotomic(Cyclotomic::new(cyclotomic_modulus(*n), vec![r]))
            }
        }
    }

    /// `re + im·i` in the Gaussian field.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Scalar::Gaussian { re, im }
    }

    /// `Σ coeffs[k] ζ_n^k`, reduced.
    pub fn cyclotomic(order: u32, coeffs: Vec<BigRational>) -> Self {
        Scalar::Cyclotomic(Cyclotomic::new(cyclotomic_modulus(order), coeffs))
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.mod_floor(&(order as i64)) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Self::cyclotomic(order, coeffs)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Gaussian { .. } => Field::Gaussian,
            Scalar::Cyclotomic(c) => Field::Cyclotomic(c.order()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Cyclotomic(c) => c.coeffs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Gaussian { re, im } => re.is_one() && im.is_zero(),
            Scalar::Cyclotomic(c) => c.coeffs.len() == 1 && c.coeffs[0].is_one(),
        }
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Gaussian { re, im } => im.is_zero().then(|| re.clone()),
            Scalar::Cyclotomic(c) => match c.coeffs.len() {
                0 => Some(BigRational::zero()),
                1 => Some(c.coeffs[0].clone()),
                _ => None,
            },
        }
    }

    /// Re-expresses the value in `field`; `None` if it does not embed.
    pub fn to_field(&self, field: &Field) -> Option<Scalar> {
        if &self.field() == field {
            return Some(self.clone());
        }
        self.as_rational().map(|r| Scalar::from_rational(r, field))
    }

    /// Complex conjugation; the identity on rationals.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.clone()),
            Scalar::Gaussian { re, im } => Scalar::Gaussian {
                re: re.clone(),
                im: -im,
            },
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.conj()),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Gaussian { re, im } => {
                let norm = re * re + im * im;
                Scalar::Gaussian {
                    re: re / &norm,
                    im: -(im / &norm),
                }
            }
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.inv()?),
        })
    }

    /// `|z|²` when the field supports it as a rational (rational and Gaussian).
    pub fn norm_squared(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r * r),
            Scalar::Gaussian { re, im } => Some(re * re + im * im),
            Scalar::Cyclotomic(_) => (self * &self.conj()).as_rational(),
        }
    }

    /// Parses a scalar in the canonical text syntax of `field`.
    ///
    /// Rational: `p` or `p/q`. Gaussian: additionally `a+b i`, `a-b i`, `b i`.
    /// Cyclotomic: additionally `[c0,c1,...]` in powers of `ζ_n`.
    pub fn parse(s: &str, field: &Field) -> Result<Scalar, ScalarParseError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ScalarParseError::Malformed {
            input: s.to_string(),
            field: field.clone(),
        };
        if compact.is_empty() {
            return Err(bad());
        }
        match field {
            Field::Rational => parse_rational(&compact)
                .map(Scalar::Rational)
                .ok_or_else(bad),
            Field::Gaussian => {
                if let Some(body) = compact.strip_suffix('i') {
                    let split = body
                        .char_indices()
                        .skip(1)
                        .filter(|&(idx, ch)| {
                            (ch == '+' || ch == '-') && !body[..idx].ends_with('/')
                        })
                        .map(|(idx, _)| idx)
                        .last();
                    let (re_s, im_s) = match split {
                        Some(idx) => (&body[..idx], &body[idx..]),
                        None => ("0", body),
                    };
                    let im = match im_s {
                        "" | "+" => Some(BigRational::one()),
                        "-" => Some(-BigRational::one()),
                        other => parse_rational(other),
                    };
                    match (parse_rational(re_s), im) {
                        (Some(re), Some(im)) => Ok(Scalar::Gaussian { re, im }),
                        _ => Err(bad()),
                    }
                } else {
                    parse_rational(&compact)
                        .map(|r| Scalar::from_rational(r, field))
                        .ok_or_else(bad)
                }
            }
            Field::Cyclotomic(n) => {
                if let Some(inner) = compact.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                    let coeffs = if inner.is_empty() {
                        Vec::new()
                    } else {
                        inner
                            .split(',')
                            .map(parse_rational)
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(bad)?
                    };
                    Ok(Scalar::cyclotomic(*n, coeffs))
                } else {
                    parse_rational(&compact)
                        .map(|r| Scalar::from_rational(r, field))
                        .ok_or_else(bad)
                }
            }
        }
    }

    fn promote_pair(&self, other: &Scalar) -> (Scalar, Scalar) {
        match (self, other) {
            (Scalar::Rational(r), o) if !matches!(o, Scalar::Rational(_)) => {
                (Scalar::from_rational(r.clone(), &o.field()), o.clone())
            }
            (s, Scalar::Rational(r)) if !matches!(s, Scalar::Rational(_)) => {
                (s.clone(), Scalar::from_rational(r.clone(), &s.field()))
            }
            _ => (self.clone(), other.clone()),
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let parse_int = |t: &str| -> Option<BigInt> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        t.parse().ok()
    };
    match s.split_once('/') {
        None => parse_int(s).map(BigRational::from_integer),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

fn same_modulus(a: &Cyclotomic, b: &Cyclotomic) -> bool {
    a.modulus.order == b.modulus.order
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                a == c && b == d
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                same_modulus(a, b) && a.coeffs == b.coeffs
            }
            (Scalar::Rational(r), o) | (o, Scalar::Rational(r)) => {
                o.as_rational().is_some_and(|v| &v == r)
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Gaussian { re, im } => {
                if im.is_zero() {
                    write!(f, "{re}")
                } else if im.is_negative() {
                    write!(f, "{re}-{} i", -im)
                } else {
                    write!(f, "{re}+{im} i")
                }
            }
            Scalar::Cyclotomic(c) => {
                if c.coeffs.is_empty() {
                    return write!(f, "[0]");
                }
                write!(f, "[")?;
                for (k, x) in c.coeffs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian { re: a + c, im: b + d }
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if same_modulus(a, b) => {
                Scalar::Cyclotomic(a.add(b))
            }
            (Scalar::Rational(_), _) | (_, Scalar::Rational(_)) => {
                let (a, b) = self.promote_pair(rhs);
                &a + &b
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian {
                    re: a * c - b * d,
                    im: a * d + b * c,
                }
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if same_modulus(a, b) => {
                Scalar::Cyclotomic(a.mul(b))
            }
            (Scalar::Rational(r), Scalar::Gaussian { re, im })
            | (Scalar::Gaussian { re, im }, Scalar::Rational(r)) => Scalar::Gaussian {
                re: re * r,
                im: im * r,
            },
            (Scalar::Rational(r), Scalar::Cyclotomic(c))
            | (Scalar::Cyclotomic(c), Scalar::Rational(r)) => {
                if r.is_zero() {
                    return Scalar::Cyclotomic(Cyclotomic::new(c.modulus.clone(), Vec::new()));
                }
                Scalar::Cyclotomic(Cyclotomic {
                    modulus: c.modulus.clone(),
                    coeffs: c.coeffs.iter().map(|x| x * r).collect(),
                })
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Gaussian { re, im } => Scalar::Gaussian { re: -re, im: -im },
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}
