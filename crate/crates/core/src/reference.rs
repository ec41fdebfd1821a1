//! Slow reference implementations used to cross-check the shipped algorithms.
//!
//! Everything here favors directness over speed: Schur polynomials by tableau
//! enumeration, Möbius values by zeta-matrix inversion over a subset-generated
//! lattice, linear systems by dense rational elimination, closed binomial
//! forms for projective cells and series. These are independent code paths
//! from the production modules and exist for the test suite.

use crate::partition::Partition;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};

/// Sparse polynomial: exponent vector -> coefficient.
pub type MonoPoly = HashMap<Vec<u32>, BigInt>;

// zero entries are pruned by callers via `prune`
pub fn poly_add_term(p: &mut MonoPoly, exp: Vec<u32>, c: BigInt) {
    *p.entry(exp).or_insert_with(BigInt::zero) += c;
}

fn prune(p: &mut MonoPoly) {
    p.retain(|_, c| !c.is_zero());
}

pub fn poly_mul(a: &MonoPoly, b: &MonoPoly) -> MonoPoly {
    let mut out = MonoPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let exp: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            poly_add_term(&mut out, exp, ca * cb);
        }
    }
    prune(&mut out);
    out
}

pub fn poly_sub(a: &mut MonoPoly, b: &MonoPoly) {
    for (e, c) in b {
        poly_add_term(a, e.clone(), -c.clone());
    }
    prune(a);
}

/// Schur polynomial s_λ(x_1..x_v) by semistandard-tableau enumeration.
pub fn schur_polynomial(lam: &Partition, nvars: usize) -> MonoPoly {
    let mut out = MonoPoly::new();
    if lam.is_empty() {
        out.insert(vec![0; nvars], BigInt::one());
        return out;
    }
    if lam.len() > nvars {
        return out;
    }
    let mut grid: Vec<Vec<u32>> = (0..lam.len()).map(|r| vec![0; lam.part(r) as usize]).collect();
    fn rec(grid: &mut Vec<Vec<u32>>, r: usize, c: usize, nvars: u32, out: &mut MonoPoly) {
        if r == grid.len() {
            let mut exp = vec![0u32; nvars as usize];
            for row in grid.iter() {
                for &e in row {
                    exp[(e - 1) as usize] += 1;
                }
            }
            poly_add_term(out, exp, BigInt::one());
            return;
        }
        let (nr, nc) = if c + 1 < grid[r].len() { (r, c + 1) } else { (r + 1, 0) };
        let lo = {
            let left = if c > 0 { grid[r][c - 1] } else { 1 };
            let above = if r > 0 && c < grid[r - 1].len() { grid[r - 1][c] + 1 } else { 1 };
            left.max(above)
        };
        for e in lo..=nvars {
            grid[r][c] = e;
            rec(grid, nr, nc, nvars, out);
        }
        grid[r][c] = 0;
    }
    rec(&mut grid, 0, 0, nvars as u32, &mut out);
    out
}

/// Expansion of a symmetric polynomial in the Schur basis, by repeatedly
/// subtracting the Schur polynomial of the lex-leading monomial.
pub fn schur_expand(mut poly: MonoPoly, nvars: usize) -> BTreeMap<Partition, BigInt> {
    let mut out = BTreeMap::new();
    while !poly.is_empty() {
        let lead = poly.keys().max().unwrap().clone();
        assert!(
            lead.windows(2).all(|w| w[0] >= w[1]),
            "lex-leading exponent {lead:?} is not a partition; input not symmetric"
        );
        let coeff = poly[&lead].clone();
        let lam = Partition::new(lead);
        let mut s = schur_polynomial(&lam, nvars);
        for c in s.values_mut() {
            *c *= &coeff;
        }
        poly_sub(&mut poly, &s);
        out.insert(lam, coeff);
    }
    out
}

/// Brute-force expansion of s_λ·s_μ: the Littlewood-Richardson oracle.
pub fn schur_product_expansion(lam: &Partition, mu: &Partition) -> BTreeMap<Partition, BigInt> {
    let nvars = (lam.len() + mu.len()).max(1);
    let prod = poly_mul(&schur_polynomial(lam, nvars), &schur_polynomial(mu, nvars));
    schur_expand(prod, nvars)
}

/// Binomial coefficient, zero outside the Pascal triangle.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Coefficients of (1+h)^{-m} (alternating) or (1-h)^{-m} up to h^{len-1}.
pub fn inverse_series(m: u32, minus_sign_inside: bool, len: usize) -> Vec<BigInt> {
    (0..len as i64)
        .map(|i| {
            let b = binomial(m as i64 - 1 + i, i);
            if minus_sign_inside {
                b // (1-h)^{-m}
            } else if i % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// Closed form: coefficient of [P^d] in the CSM class of the j-cell of P^n.
pub fn csm_cell_coeff(j: u32, d: u32) -> BigInt {
    binomial(j as i64, d as i64)
}

/// Closed form: coefficient of [P^d] in the SSM class of the j-cell of P^n.
pub fn ssm_cell_coeff(j: u32, n: u32, d: u32) -> BigInt {
    if d > j {
        return BigInt::zero();
    }
    let b = binomial((n - d) as i64, (j - d) as i64);
    if (j - d) % 2 == 0 {
        b
    } else {
        -b
    }
}

// ---------------------------------------------------------------------------
// rational linear algebra

pub fn rat(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Reduced row echelon form; returns (rref rows without zero rows, rank).
pub fn rref(mut rows: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, usize) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v /= &p;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..ncols {
                    let s = &rows[rank][c] * &f;
                    rows[r][c] -= s;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, rank)
}

/// Scales RREF rows to primitive integer vectors with positive leading entry.
pub fn canonical_int_rows(rref_rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rref_rows
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for v in row {
                lcm = num_integer::lcm(lcm, v.denom().clone());
            }
            let ints: Vec<BigInt> = row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
            let mut gcd = BigInt::zero();
            for v in &ints {
                gcd = num_integer::gcd(gcd, v.clone());
            }
            let lead_neg = ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
            ints.into_iter()
                .map(|v| {
                    let v = &v / &gcd;
                    if lead_neg {
                        -v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

/// Subset-generated intersection lattice with Möbius values by zeta-matrix
/// inversion. Elements are canonical integer equation matrices, graded by
/// codimension, bottom first. Returns (elements, codims, μ values).
pub fn lattice_oracle(hyperplanes: &[Vec<BigInt>]) -> (Vec<Vec<Vec<BigInt>>>, Vec<usize>, Vec<BigInt>) {
    let m = hyperplanes.len();
    let mut seen: HashMap<Vec<Vec<BigInt>>, (usize, Vec<Vec<BigRational>>)> = HashMap::new();
    for mask in 0u32..(1 << m) {
        let rows: Vec<Vec<BigRational>> = (0..m)
            .filter(|j| mask & (1 << j) != 0)
            .map(|j| hyperplanes[j].iter().map(rat).collect())
            .collect();
        let (rr, rank) = rref(rows);
        seen.entry(canonical_int_rows(&rr)).or_insert((rank, rr));
    }
    let mut elems: Vec<(Vec<Vec<BigInt>>, usize, Vec<Vec<BigRational>>)> =
        seen.into_iter().map(|(k, (rank, rr))| (k, rank, rr)).collect();
    elems.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));

    let n = elems.len();
    // leq(i, j): subspace_i contains subspace_j, i.e. equations_i ⊆ span(equations_j)
    let leq = |i: usize, j: usize| -> bool {
        let mut rows = elems[j].2.clone();
        rows.extend(elems[i].2.iter().cloned());
        rref(rows).1 == elems[j].1
    };
    // invert the zeta matrix: Σ_{i ≤ k ≤ j} μ(i,k) ζ(k,j) = δ_ij; we need μ(0, ·)
    let mut mu = vec![BigInt::zero(); n];
    mu[0] = BigInt::one();
    for j in 1..n {
        let mut s = BigInt::zero();
        for k in 0..j {
            if !mu[k].is_zero() && leq(k, j) {
                s += &mu[k];
            }
        }
        mu[j] = -s;
    }
    let codims: Vec<usize> = elems.iter().map(|e| e.1).collect();
    (elems.into_iter().map(|e| e.0).collect(), codims, mu)
}

/// Poincaré polynomial from oracle lattice data: Σ_z μ(z)(-t)^{codim z}.
pub fn poincare_oracle(codims: &[usize], mu: &[BigInt]) -> Vec<BigInt> {
    let top = codims.iter().copied().max().unwrap_or(0);
    let mut out = vec![BigInt::zero(); top + 1];
    for (c, m) in codims.iter().zip(mu) {
        if c % 2 == 0 {
            out[*c] += m;
        } else {
            out[*c] -= m;
        }
    }
    while out.len() > 1 && out.last().is_some_and(|v| v.is_zero()) {
        out.pop();
    }
    out
}

/// χ of the projective complement: Σ_z μ(z)·(n+1-codim z), from 1_U = Σ μ(z) 1_{P(V_z)}.
pub fn chi_complement_oracle(n: u32, codims: &[usize], mu: &[BigInt]) -> BigInt {
    codims
        .iter()
        .zip(mu)
        .map(|(c, m)| m * BigInt::from(n as i64 + 1 - *c as i64))
        .sum()
}

/// Dense rational solve of φ = Σ_Y a_Y (-1)^{dim Y} Eu_Y; panics unless the
/// unique solution is integral.
pub fn cc_solve_oracle(dims: &[u32], eu: &[Vec<BigInt>], phi: &[BigInt]) -> Vec<BigInt> {
    let n = dims.len();
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|s| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|y| {
                    let sign = if dims[y] % 2 == 1 { -BigInt::one() } else { BigInt::one() };
                    rat(&(&eu[y][s] * sign))
                })
                .collect();
            row.push(rat(&phi[s]));
            row
        })
        .collect();
    let ncols = n + 1;
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !aug[r][col].is_zero()) else { continue };
        aug.swap(rank, p);
        let pv = aug[rank][col].clone();
        for v in aug[rank].iter_mut() {
            *v /= &pv;
        }
        for r in 0..n {
            if r != rank && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..ncols {
                    let s = &aug[rank][c] * &f;
                    aug[r][c] -= s;
                }
            }
        }
        rank += 1;
    }
    assert_eq!(rank, n, "Euler-obstruction system is singular");
    (0..n)
        .map(|r| {
            let v = &aug[r][n];
            assert!(v.is_integer(), "non-integral solution entry {v}");
            v.to_integer()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// tangent-class oracle: honest two-alphabet expansion of Π(1 + x_i + y_j)

/// Expands Π_{i≤k,j≤m}(1+x_i+y_j), rewrites the y-dependence in elementary
/// symmetric polynomials e_r(y), substitutes e_r(y) -> h_r(x), and returns the
/// resulting polynomial in x alone.
pub fn tangent_xpoly_oracle(k: usize, m: usize) -> MonoPoly {
    let nv = k + m;
    let mut poly = MonoPoly::new();
    poly.insert(vec![0; nv], BigInt::one());
    for i in 0..k {
        for j in 0..m {
            let mut factor = MonoPoly::new();
            factor.insert(vec![0; nv], BigInt::one());
            let mut ex = vec![0; nv];
            ex[i] = 1;
            factor.insert(ex, BigInt::one());
            let mut ey = vec![0; nv];
            ey[k + j] = 1;
            factor.insert(ey, BigInt::one());
            poly = poly_mul(&poly, &factor);
        }
    }

    // e_r(y) as polynomials in the y block
    let mut e_y: Vec<MonoPoly> = vec![MonoPoly::new(); m + 1];
    for mask in 0u32..(1 << m) {
        let r = mask.count_ones() as usize;
        let mut exp = vec![0u32; nv];
        for j in 0..m {
            if mask & (1 << j) != 0 {
                exp[k + j] = 1;
            }
        }
        e_y[r].insert(exp, BigInt::one());
    }

    // peel off elementary-basis terms by lex-leading y-exponent
    let mut pieces: Vec<(Vec<u32>, MonoPoly)> = Vec::new(); // (e-multidegree β, x-coefficient)
    while !poly.is_empty() {
        let alpha: Vec<u32> = poly.keys().map(|e| e[k..].to_vec()).max().unwrap();
        let coeff_x: MonoPoly = poly
            .iter()
            .filter(|(e, _)| e[k..] == alpha[..])
            .map(|(e, c)| {
                let mut x = e[..k].to_vec();
                x.extend(std::iter::repeat(0).take(m));
                (x, c.clone())
            })
            .collect();
        assert!(alpha.windows(2).all(|w| w[0] >= w[1]), "poly not symmetric in y");
        let mut beta = vec![0u32; m + 1];
        for r in 1..=m {
            beta[r] = alpha.get(r - 1).copied().unwrap_or(0) - alpha.get(r).copied().unwrap_or(0);
        }
        let mut eprod = MonoPoly::new();
        eprod.insert(vec![0; nv], BigInt::one());
        for (r, &b) in beta.iter().enumerate().skip(1) {
            for _ in 0..b {
                eprod = poly_mul(&eprod, &e_y[r]);
            }
        }
        poly_sub(&mut poly, &poly_mul(&coeff_x, &eprod));
        pieces.push((beta, coeff_x));
    }

    // h_r(x): all degree-r monomials in the x block
    let h_x = |r: u32| -> MonoPoly {
        let mut p = MonoPoly::new();
        fn rec(exp: &mut Vec<u32>, i: usize, left: u32, k: usize, nv: usize, p: &mut MonoPoly) {
            if i == k - 1 {
                exp[i] = left;
                let mut full = exp.clone();
                full.resize(nv, 0);
                p.insert(full, BigInt::one());
                return;
            }
            for v in 0..=left {
                exp[i] = v;
                rec(exp, i + 1, left - v, k, nv, p);
            }
        }
        let mut exp = vec![0u32; k];
        rec(&mut exp, 0, r, k, nv, &mut p);
        p
    };

    let mut out = MonoPoly::new();
    for (beta, coeff_x) in pieces {
        let mut term = coeff_x;
        for (r, &b) in beta.iter().enumerate().skip(1) {
            for _ in 0..b {
                term = poly_mul(&term, &h_x(r as u32));
            }
        }
        for (e, c) in term {
            poly_add_term(&mut out, e[..k].to_vec(), c);
        }
    }
    prune(&mut out);
    out
}
