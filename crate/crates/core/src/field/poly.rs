//! Dense polynomials over a prime field, just enough to build and validate
//! extension-field moduli.

/// Coefficients `c_0, c_1, ...` in ascending degree, reduced mod `p`.
pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(mut f: Poly) -> Poly {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

pub(crate) fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime and tiny.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `f` modulo `g` (g nonzero).
pub(crate) fn rem(f: &[u32], g: &[u32], p: u32) -> Poly {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = inv_mod(g[dg], p);
    let mut r: Poly = f.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let factor = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        let shift = dr - dg;
        for (i, &gc) in g.iter().enumerate().take(dg + 1) {
            let sub = (factor as u64 * gc as u64 % p as u64) as u32;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
    }
    trim(r)
}

pub(crate) fn mul(f: &[u32], g: &[u32], p: u32) -> Poly {
    let mut out = vec![0u32; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + a as u64 * b as u64) % p as u64) as u32;
        }
    }
    trim(out)
}

fn eval(f: &[u32], x: u32, p: u32) -> u32 {
    f.iter()
        .rev()
        .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) as u32
}

/// The monic polynomial of degree `deg` whose lower coefficients are the
/// base-`p` digits of `code`.
pub(crate) fn monic_from_code(mut code: u64, deg: usize, p: u32) -> Poly {
    let mut f = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        f.push((code % p as u64) as u32);
        code /= p as u64;
    }
    f.push(1);
    f
}

/// Irreducibility over `F_p`.
///
/// Degrees up to 3 are irreducible iff they have no root; higher degrees are
/// checked by trial division by every monic polynomial of degree at most
/// `deg / 2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(deg) = degree(f) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    if deg <= 3 {
        return (0..p).all(|x| eval(f, x, p) != 0);
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let g = monic_from_code(code, d, p);
            if degree(&rem(f, &g, p)).is_none() {
                return false;
            }
        }
    }
    true
}
