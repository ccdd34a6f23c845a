//! Special product functions used by the closed-form tiling counts.
//!
//! All results are exact (`BigInt` / `BigRational`). The functions here are:
//!
//! * `factorial`, `double_factorial` — with the convention `(-1)!! = 1`;
//! * `hyperfactorial` — `H(n) = 0!·1!···(n-1)!`;
//! * `hyperfactorial_skip` — `H2(n) = (n-2)!·(n-4)!···` (one factor per
//!   `i = 1..⌊n/2⌋`, namely `(n-2i)!`);
//! * `pochhammer` — the rising factorial `(x)_n` with the reciprocal
//!   extension `1/((x-1)(x-2)···(x+n))` for negative `n`;
//! * `pochhammer_skip` — the step-2 variant `[x]_n = x(x+2)···(x+2n-2)`,
//!   with `1/((x-2)(x-4)···(x+2n))` for negative `n`;
//! * `product_t` — `T(x,n,m) = ∏_{i=0}^{m-1} (x+i)_{n-2i}`;
//! * `product_v` — `V(x,n,m) = ∏_{i=0}^{m-1} [x+2i]_{n-2i}`.
//!
//! Empty products are always 1. A zero factor in a denominator position is a
//! [`Error::Pole`], distinct from [`Error::Domain`], so sweeps can skip poles.

use crate::error::{Error, Result};
use crate::{int, rat, Int, Rat};
use num_traits::{One, Zero};

/// `n!` for `n ≥ 0`.
pub fn factorial(n: i64) -> Result<Int> {
    if n < 0 {
        return Err(Error::Domain(format!("factorial of negative {n}")));
    }
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= int(k);
    }
    Ok(acc)
}

/// Double factorial `n!!`: product of same-parity integers down to 1 or 2.
///
/// `0!! = 1` and `(-1)!! = 1` by convention (the latter is needed when a
/// formula factor `(2a-1)!!` is evaluated at `a = 0`).
pub fn double_factorial(n: i64) -> Result<Int> {
    if n < -1 {
        return Err(Error::Domain(format!("double factorial of {n}")));
    }
    let mut acc = Int::one();
    let mut k = n;
    while k > 1 {
        acc *= int(k);
        k -= 2;
    }
    Ok(acc)
}

/// Hyperfactorial `H(n) = 0!·1!···(n-1)!` for `n ≥ 0`.
pub fn hyperfactorial(n: i64) -> Result<Int> {
    if n < 0 {
        return Err(Error::Domain(format!("hyperfactorial of negative {n}")));
    }
    let mut acc = Int::one();
    let mut fact = Int::one();
    // acc accumulates 0!·1!···(k-1)!, fact holds (k-1)! as k advances.
    for k in 1..n {
        fact *= int(k);
        acc *= &fact;
    }
    Ok(acc)
}

/// Skipping hyperfactorial `H2(n) = ∏_{i=1}^{⌊n/2⌋} (n-2i)!` for `n ≥ 0`.
pub fn hyperfactorial_skip(n: i64) -> Result<Int> {
    if n < 0 {
        return Err(Error::Domain(format!(
            "skipping hyperfactorial of negative {n}"
        )));
    }
    let mut acc = Int::one();
    for i in 1..=(n / 2) {
        acc *= factorial(n - 2 * i)?;
    }
    Ok(acc)
}

/// Pochhammer symbol `(x)_n`.
///
/// * `n > 0`: `x(x+1)···(x+n-1)`;
/// * `n = 0`: `1`;
/// * `n < 0`: `1 / ((x-1)(x-2)···(x+n))` — a pole if any factor vanishes.
pub fn pochhammer(x: &Rat, n: i64) -> Result<Rat> {
    if n >= 0 {
        let mut acc = Rat::one();
        for i in 0..n {
            acc *= x + rat(i);
        }
        Ok(acc)
    } else {
        let mut acc = Rat::one();
        // factors x-1, x-2, ..., x+n (i.e. x-k for k = 1..-n)
        for k in 1..=(-n) {
            let f = x - rat(k);
            if f.is_zero() {
                return Err(Error::Pole(format!("({x})_{n}: factor {x}-{k} = 0")));
            }
            acc *= f;
        }
        Ok(acc.recip())
    }
}

/// Step-2 Pochhammer symbol `[x]_n`.
///
/// * `n > 0`: `x(x+2)···(x+2n-2)`;
/// * `n = 0`: `1`;
/// * `n < 0`: `1 / ((x-2)(x-4)···(x+2n))` — a pole if any factor vanishes.
pub fn pochhammer_skip(x: &Rat, n: i64) -> Result<Rat> {
    if n >= 0 {
        let mut acc = Rat::one();
        for i in 0..n {
            acc *= x + rat(2 * i);
        }
        Ok(acc)
    } else {
        let mut acc = Rat::one();
        for k in 1..=(-n) {
            let f = x - rat(2 * k);
            if f.is_zero() {
                return Err(Error::Pole(format!("[{x}]_{n}: factor {x}-{} = 0", 2 * k)));
            }
            acc *= f;
        }
        Ok(acc.recip())
    }
}

/// `T(x,n,m) = ∏_{i=0}^{m-1} (x+i)_{n-2i}` for `m ≥ 0`; 1 when `m = 0`.
pub fn product_t(x: &Rat, n: i64, m: i64) -> Result<Rat> {
    if m < 0 {
        return Err(Error::Domain(format!("T(x,n,m) needs m ≥ 0, got {m}")));
    }
    let mut acc = Rat::one();
    for i in 0..m {
        acc *= pochhammer(&(x + rat(i)), n - 2 * i)?;
    }
    Ok(acc)
}

/// `V(x,n,m) = ∏_{i=0}^{m-1} [x+2i]_{n-2i}` for `m ≥ 0`; 1 when `m = 0`.
pub fn product_v(x: &Rat, n: i64, m: i64) -> Result<Rat> {
    if m < 0 {
        return Err(Error::Domain(format!("V(x,n,m) needs m ≥ 0, got {m}")));
    }
    let mut acc = Rat::one();
    for i in 0..m {
        acc *= pochhammer_skip(&(x + rat(2 * i)), n - 2 * i)?;
    }
    Ok(acc)
}

/// Integer power of 2 as an exact rational (negative exponents allowed).
pub fn pow2(e: i64) -> Rat {
    let base = Rat::from_integer(int(2));
    if e >= 0 {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc *= &base;
        }
        acc
    } else {
        pow2(-e).recip()
    }
}
