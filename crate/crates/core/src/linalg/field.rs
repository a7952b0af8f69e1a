use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::gf::{self, GfTables, MAX_TABLE_ORDER};
use crate::error::{Error, Result};

/// Characteristic used when none is given.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// Random rational coefficients are drawn from `[-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND]`.
pub const RATIONAL_SAMPLE_BOUND: i64 = 16;

/// Prime fields at least this large are used directly as parameter fields.
const LARGE_PRIME: u32 = 1 << 14;
/// Extension fields for small characteristic are grown to at least this order.
const PARAMETER_FIELD_ORDER: u64 = 1 << 16;

/// A coefficient field: the rationals, a prime field `F_p`, or `GF(p^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u32,
    degree: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub const fn rationals() -> FieldSpec {
        FieldSpec {
            characteristic: 0,
            degree: 1,
        }
    }

    pub fn prime(p: u32) -> Result<FieldSpec> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Configuration(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(FieldSpec {
            characteristic: p,
            degree: 1,
        })
    }

    /// `GF(p^k)`; the order must fit the lookup tables.
    pub fn extension(p: u32, k: u32) -> Result<FieldSpec> {
        let base = FieldSpec::prime(p)?;
        if k == 1 {
            return Ok(base);
        }
        if k == 0
            || (p as u64)
                .checked_pow(k)
                .is_none_or(|q| q > MAX_TABLE_ORDER)
        {
            return Err(Error::Configuration(format!("GF({p}^{k}) is too large")));
        }
        Ok(FieldSpec {
            characteristic: p,
            degree: k,
        })
    }

    /// Parses `0` as the rationals and anything else as a prime field.
    pub fn from_characteristic(characteristic: u32) -> Result<FieldSpec> {
        if characteristic == 0 {
            Ok(FieldSpec::rationals())
        } else {
            FieldSpec::prime(characteristic)
        }
    }

    /// A field of the same characteristic large enough for random linear forms
    /// to behave generically.
    pub fn parameter_field(&self) -> FieldSpec {
        let p = self.characteristic;
        if p == 0 || p >= LARGE_PRIME || self.order().unwrap_or(0) >= PARAMETER_FIELD_ORDER {
            return *self;
        }
        let mut k = 1;
        while (p as u64).pow(k) < PARAMETER_FIELD_ORDER {
            k += 1;
        }
        FieldSpec {
            characteristic: p,
            degree: k,
        }
    }

    pub fn prime_subfield(&self) -> FieldSpec {
        FieldSpec {
            characteristic: self.characteristic,
            degree: 1,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        if self.characteristic == 0 {
            None
        } else {
            Some((self.characteristic as u64).pow(self.degree))
        }
    }

    pub(crate) fn ops(&self) -> Ops {
        match (self.characteristic, self.degree) {
            (0, _) => Ops::Rat(RatOps),
            (p, 1) => Ops::Prime(PrimeOps::new(p as u64)),
            (p, k) => Ops::Gf(GfOps {
                t: gf::tables(p, k),
            }),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// Image of an integer under the canonical map `Z -> F`.
    pub fn from_i64(&self, v: i64) -> Scalar {
        let repr = if self.characteristic == 0 {
            Repr::Rat(BigRational::from_integer(BigInt::from(v)))
        } else {
            Repr::Fin(v.rem_euclid(self.characteristic as i64) as u32)
        };
        Scalar { field: *self, repr }
    }

    /// A uniformly random element (bounded integers for the rationals).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.order() {
            None => self.from_i64(rng.random_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND)),
            Some(q) => Scalar {
                field: *self,
                repr: Repr::Fin(rng.random_range(0..q) as u32),
            },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.characteristic, self.degree) {
            (0, _) => write!(f, "QQ"),
            (p, 1) => write!(f, "F_{p}"),
            (p, k) => write!(f, "GF({p}^{k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Fin(u32),
    Rat(BigRational),
}

/// A field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    pub(crate) repr: Repr,
}

impl Scalar {
    pub fn rational(numer: i64, denom: i64) -> Result<Scalar> {
        if denom == 0 {
            return Err(Error::Configuration("zero denominator".into()));
        }
        Ok(Scalar {
            field: FieldSpec::rationals(),
            repr: Repr::Rat(BigRational::new(numer.into(), denom.into())),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Fin(v) => *v == 0,
            Repr::Rat(r) => r.is_zero(),
        }
    }

    pub(crate) fn fin(&self) -> u32 {
        match self.repr {
            Repr::Fin(v) => v,
            Repr::Rat(_) => unreachable!("rational scalar in a finite field"),
        }
    }

    pub(crate) fn rat(&self) -> &BigRational {
        match &self.repr {
            Repr::Rat(r) => r,
            Repr::Fin(_) => unreachable!("finite-field scalar in the rationals"),
        }
    }

    pub(crate) fn from_fin(field: FieldSpec, v: u32) -> Scalar {
        Scalar {
            field,
            repr: Repr::Fin(v),
        }
    }

    pub(crate) fn from_rat(v: BigRational) -> Scalar {
        Scalar {
            field: FieldSpec::rationals(),
            repr: Repr::Rat(v),
        }
    }

    fn same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field, other.field,
            "scalar arithmetic across different fields"
        );
    }

    fn binary(&self, other: &Scalar, op: Binary) -> Scalar {
        self.same_field(other);
        let repr = match self.field.ops() {
            Ops::Prime(o) => Repr::Fin(op.apply(&o, &self.fin(), &other.fin())),
            Ops::Gf(o) => Repr::Fin(op.apply(&o, &self.fin(), &other.fin())),
            Ops::Rat(o) => Repr::Rat(op.apply(&o, self.rat(), other.rat())),
        };
        Scalar {
            field: self.field,
            repr,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let repr = match self.field.ops() {
            Ops::Prime(o) => Repr::Fin(o.inv(&self.fin())),
            Ops::Gf(o) => Repr::Fin(o.inv(&self.fin())),
            Ops::Rat(o) => Repr::Rat(o.inv(self.rat())),
        };
        Some(Scalar {
            field: self.field,
            repr,
        })
    }
}

#[derive(Clone, Copy)]
enum Binary {
    Add,
    Sub,
    Mul,
}

impl Binary {
    fn apply<O: FieldOps>(self, o: &O, a: &O::E, b: &O::E) -> O::E {
        match self {
            Binary::Add => o.add(a, b),
            Binary::Sub => o.sub(a, b),
            Binary::Mul => o.mul(a, b),
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, Binary::Add)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, Binary::Sub)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, Binary::Mul)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        &self.field.zero() - self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Fin(v) => write!(f, "{v}"),
            Repr::Rat(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// Element arithmetic for one field; the elimination kernels are generic over it.
pub(crate) trait FieldOps {
    type E: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    /// `dst -= f * src`, entry-wise.
    fn sub_scaled(&self, dst: &mut [Self::E], f: &Self::E, src: &[Self::E]) {
        let nf = self.neg(f);
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.add(d, &self.mul(&nf, s));
            }
        }
    }

    fn scale(&self, row: &mut [Self::E], f: &Self::E) {
        for x in row.iter_mut() {
            if !self.is_zero(x) {
                *x = self.mul(x, f);
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeOps {
    p: u64,
    /// `floor(2^64 / p)` for Barrett reduction.
    m: u64,
}

impl PrimeOps {
    pub(crate) fn new(p: u64) -> PrimeOps {
        PrimeOps {
            p,
            m: ((1u128 << 64) / p as u128) as u64,
        }
    }

    /// `x mod p` for `x < 2^64`.
    #[inline]
    fn reduce(&self, x: u64) -> u32 {
        let q = ((x as u128 * self.m as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        if r >= self.p {
            r -= self.p;
        }
        r as u32
    }
}

impl FieldOps for PrimeOps {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            (self.p - *a as u64) as u32
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    fn inv(&self, a: &u32) -> u32 {
        // Fermat
        let (mut base, mut e, mut acc) = (*a as u64, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u32
    }
    fn sub_scaled(&self, dst: &mut [u32], f: &u32, src: &[u32]) {
        let nf = self.p - *f as u64;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = self.reduce(*d as u64 + nf * s as u64);
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct GfOps {
    t: &'static GfTables,
}

impl FieldOps for GfOps {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.t.add(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.t.neg(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.t.mul(*a, *b)
    }
    fn inv(&self, a: &u32) -> u32 {
        self.t.inv(*a)
    }
    fn sub_scaled(&self, dst: &mut [u32], f: &u32, src: &[u32]) {
        let nf = self.t.neg(*f);
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = self.t.add(*d, self.t.mul(nf, s));
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct RatOps;

impl FieldOps for RatOps {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn sub_scaled(&self, dst: &mut [BigRational], f: &BigRational, src: &[BigRational]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d -= f * s;
            }
        }
    }
}

pub(crate) enum Ops {
    Prime(PrimeOps),
    Gf(GfOps),
    Rat(RatOps),
}
