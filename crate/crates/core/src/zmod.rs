//! Integer groundwork for Z_n: factorization, zero divisors and the
//! gcd-class partition of the nonzero zero divisors.
//!
//! Two vertices of the zero-divisor graph are joined exactly when the
//! product of their gcd labels is divisible by `n`, so every module above
//! this one works class-by-class with [`ClassStructure`].

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`factorize`].
pub const MAX_MODULUS: u64 = i64::MAX as u64;

/// Trial division runs up to this bound before falling back to Pollard's rho.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho. `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 0u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // batch overshot; replay one step at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Form {
    /// n = p³
    PCubed {
        p: u64,
    },
    /// n = p²q with p ≠ q
    PSquaredQ {
        p: u64,
        q: u64,
    },
    General,
}

impl Form {
    pub fn name(&self) -> &'static str {
        match self {
            Form::PCubed { .. } => "p3",
            Form::PSquaredQ { .. } => "p2q",
            Form::General => "general",
        }
    }
}

/// An integer `n ≥ 2` together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactoredModulus {
    n: u64,
    factors: Vec<(u64, u32)>,
    form: Form,
}

impl FactoredModulus {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn form(&self) -> Form {
        self.form
    }

    /// Euler's totient, from the factorization.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .fold(self.n, |acc, &(p, _)| acc / p * (p - 1))
    }

    /// Number of nonzero zero divisors, `n - 1 - φ(n)`.
    pub fn zero_divisor_count(&self) -> u64 {
        self.n - 1 - self.totient()
    }

    fn classify(factors: &[(u64, u32)]) -> Form {
        match factors {
            [(p, 3)] => Form::PCubed { p: *p },
            [(a, 2), (b, 1)] => Form::PSquaredQ { p: *a, q: *b },
            [(a, 1), (b, 2)] => Form::PSquaredQ { p: *b, q: *a },
            _ => Form::General,
        }
    }
}

/// Factor `n` by trial division, handing any large cofactor to Pollard's rho.
pub fn factorize(n: u64) -> Result<FactoredModulus> {
    if !(2..=MAX_MODULUS).contains(&n) {
        return Err(Error::InvalidModulus(n));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && d * d <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if d * d > rest {
            primes.push(rest);
        } else {
            split_large(rest, &mut primes);
        }
    }
    primes.sort_unstable();

    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    let form = FactoredModulus::classify(&factors);
    Ok(FactoredModulus { n, factors, form })
}

/// All `x` with `0 < x < n` and `gcd(x, n) > 1`, ascending.
pub fn zero_divisors(m: &FactoredModulus) -> Vec<u64> {
    (1..m.n).filter(|&x| gcd(x, m.n) > 1).collect()
}

/// The vertices sharing one value of `gcd(x, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub divisor: u64,
    pub members: Vec<u64>,
    /// `n | divisor²`: the class is a clique and every member squares to zero.
    pub looped: bool,
}

impl VertexClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassStructure {
    modulus: FactoredModulus,
    classes: Vec<VertexClass>,
    total_vertices: usize,
}

impl ClassStructure {
    pub fn modulus(&self) -> &FactoredModulus {
        &self.modulus
    }

    pub fn n(&self) -> u64 {
        self.modulus.n
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn total_vertices(&self) -> usize {
        self.total_vertices
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(VertexClass::size).collect()
    }

    /// Whether distinct classes `i` and `j` are completely joined.
    pub fn joined(&self, i: usize, j: usize) -> bool {
        let n = self.modulus.n;
        mul_mod(self.classes[i].divisor, self.classes[j].divisor, n) == 0
    }

    /// Vertex labels in canonical order: class by class, ascending inside.
    pub fn labels(&self) -> Vec<u64> {
        self.classes
            .iter()
            .flat_map(|c| c.members.iter().copied())
            .collect()
    }

    /// Class index of every vertex, aligned with [`ClassStructure::labels`].
    pub fn class_of_vertex(&self) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| std::iter::repeat_n(i, c.size()))
            .collect()
    }

    /// First vertex index of each class in canonical order.
    pub fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.classes.len());
        let mut at = 0;
        for c in &self.classes {
            offsets.push(at);
            at += c.size();
        }
        offsets
    }
}

/// Canonical position of a class label for the two special forms.
fn canonical_rank(form: Form, d: u64) -> u64 {
    match form {
        Form::PCubed { p } if d == p => 0,
        Form::PCubed { .. } => 1,
        Form::PSquaredQ { p, q } => {
            if d == p {
                0
            } else if d == q {
                1
            } else if d == p * q {
                2
            } else {
                3
            }
        }
        Form::General => d,
    }
}

/// Group the nonzero zero divisors of `n` by `gcd(x, n)`.
///
/// Classes come out as `[p, p²]` for `n = p³`, as `[p, q, pq, p²]` for
/// `n = p²q`, and in ascending divisor order otherwise.
pub fn class_partition(m: &FactoredModulus) -> Result<ClassStructure> {
    let n = m.n;
    let mut classes: Vec<VertexClass> = Vec::new();
    for x in 1..n {
        let d = gcd(x, n);
        if d == 1 {
            continue;
        }
        match classes.iter_mut().find(|c| c.divisor == d) {
            Some(c) => c.members.push(x),
            None => classes.push(VertexClass {
                divisor: d,
                members: vec![x],
                looped: mul_mod(d, d, n) == 0,
            }),
        }
    }
    if classes.is_empty() {
        return Err(Error::NoZeroDivisors(n));
    }
    let form = m.form;
    classes.sort_by_key(|c| canonical_rank(form, c.divisor));
    let total_vertices = classes.iter().map(VertexClass::size).sum();
    Ok(ClassStructure {
        modulus: m.clone(),
        classes,
        total_vertices,
    })
}

/// Primes up to `limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(cs: &ClassStructure) -> Vec<(u64, usize, bool)> {
        cs.classes()
            .iter()
            .map(|c| (c.divisor, c.size(), c.looped))
            .collect()
    }

    #[test]
    fn factorize_examples() {
        let m = factorize(27).unwrap();
        assert_eq!(m.factors(), &[(3, 3)]);
        assert_eq!(m.form(), Form::PCubed { p: 3 });

        let m = factorize(12).unwrap();
        assert_eq!(m.factors(), &[(2, 2), (3, 1)]);
        assert_eq!(m.form(), Form::PSquaredQ { p: 2, q: 3 });

        let m = factorize(30).unwrap();
        assert_eq!(m.factors(), &[(2, 1), (3, 1), (5, 1)]);
        assert_eq!(m.form(), Form::General);
    }

    #[test]
    fn p_squared_q_with_larger_square() {
        assert_eq!(
            factorize(18).unwrap().form(),
            Form::PSquaredQ { p: 3, q: 2 }
        );
        assert_eq!(
            factorize(98).unwrap().form(),
            Form::PSquaredQ { p: 7, q: 2 }
        );
    }

    #[test]
    fn rejects_small_and_oversized_moduli() {
        assert_eq!(factorize(0), Err(Error::InvalidModulus(0)));
        assert_eq!(factorize(1), Err(Error::InvalidModulus(1)));
        assert!(factorize(u64::MAX).is_err());
    }

    #[test]
    fn large_semiprime_uses_rho() {
        // both factors beyond the trial-division bound
        let (a, b) = (3_000_017u64, 2_000_000_011u64);
        let m = factorize(a * b).unwrap();
        assert_eq!(m.factors(), &[(a, 1), (b, 1)]);
        let p = 2_147_483_647u64;
        let m = factorize(p * 4).unwrap();
        assert_eq!(m.factors(), &[(2, 2), (p, 1)]);
        assert_eq!(m.form(), Form::PSquaredQ { p: 2, q: p });
    }

    #[test]
    fn zero_divisor_examples() {
        let z = |n| zero_divisors(&factorize(n).unwrap());
        assert_eq!(z(27), vec![3, 6, 9, 12, 15, 18, 21, 24]);
        assert!(z(7).is_empty());
        assert_eq!(z(12), vec![2, 3, 4, 6, 8, 9, 10]);
    }

    #[test]
    fn class_partition_examples() {
        let cs = class_partition(&factorize(27).unwrap()).unwrap();
        assert_eq!(summary(&cs), vec![(3, 6, false), (9, 2, true)]);
        assert_eq!(cs.labels(), vec![3, 6, 12, 15, 21, 24, 9, 18]);

        let cs = class_partition(&factorize(12).unwrap()).unwrap();
        assert_eq!(
            summary(&cs),
            vec![(2, 2, false), (3, 2, false), (6, 1, true), (4, 2, false)]
        );

        let cs = class_partition(&factorize(4).unwrap()).unwrap();
        assert_eq!(summary(&cs), vec![(2, 1, true)]);
    }

    #[test]
    fn prime_modulus_has_no_classes() {
        let m = factorize(7).unwrap();
        assert_eq!(class_partition(&m), Err(Error::NoZeroDivisors(7)));
    }

    #[test]
    fn general_order_is_ascending() {
        let cs = class_partition(&factorize(30).unwrap()).unwrap();
        let ds: Vec<u64> = cs.classes().iter().map(|c| c.divisor).collect();
        assert_eq!(ds, vec![2, 3, 5, 6, 10, 15]);
    }

    #[test]
    fn mul_mod_handles_wide_products() {
        let m = MAX_MODULUS;
        assert_eq!(mul_mod(m - 1, m - 1, m), 1);
    }
}
