//! Littlewood-Richardson coefficients by the tableau rule.
//!
//! `c(ν; λ, μ)` counts semistandard fillings of the skew shape ν/λ with
//! content μ whose reverse reading word (rows right-to-left, top-to-bottom)
//! is a lattice word.

use crate::partition::Partition;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

static MEMO: OnceLock<Mutex<HashMap<(Partition, Partition, Partition), u64>>> = OnceLock::new();

pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lam.weight() + mu.weight() != nu.weight() || !nu.contains(lam) {
        return 0;
    }
    if mu.is_empty() {
        return 1; // nu == lam by the weight check
    }
    let key = (lam.clone(), mu.clone(), nu.clone());
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = memo.lock().unwrap().get(&key) {
        return v;
    }
    let v = count_fillings(lam, mu, nu);
    memo.lock().unwrap().insert(key, v);
    v
}

fn count_fillings(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    // cells in reverse reading order: each row right-to-left, top row first
    let mut cells = Vec::new();
    for r in 0..nu.len() {
        for c in (lam.part(r)..nu.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let width = nu.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; nu.len()];
    let mut counts = vec![0u32; mu.len() + 1];
    fill(0, &mut grid, &mut counts, &cells, lam, mu)
}

fn fill(
    idx: usize,
    grid: &mut Vec<Vec<u32>>,
    counts: &mut Vec<u32>,
    cells: &[(usize, usize)],
    lam: &Partition,
    mu: &Partition,
) -> u64 {
    if idx == cells.len() {
        return 1; // content bounds + cell count force content == mu
    }
    let (r, c) = cells[idx];
    // row weakly increasing: bounded above by the right neighbor (filled earlier)
    let row_cap = if (c as u32) + 1 < grid[r].len() as u32 && grid[r][c + 1] != 0 {
        grid[r][c + 1]
    } else {
        mu.len() as u32
    };
    // column strictly increasing: bounded below by the cell above (if in the skew shape)
    let col_floor = if r > 0 && (c as u32) >= lam.part(r - 1) && (c as u32) < grid[r - 1].len() as u32 && grid[r - 1][c] != 0 {
        grid[r - 1][c] + 1
    } else {
        1
    };
    let mut total = 0;
    for e in col_floor..=row_cap {
        let e_us = e as usize;
        if counts[e_us] + 1 > mu.part(e_us - 1) {
            continue; // content bound
        }
        if e >= 2 && counts[e_us] + 1 > counts[e_us - 1] {
            continue; // lattice-word prefix condition
        }
        counts[e_us] += 1;
        grid[r][c] = e;
        total += fill(idx + 1, grid, counts, cells, lam, mu);
        grid[r][c] = 0;
        counts[e_us] -= 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn small_values() {
        assert_eq!(lr_coefficient(&p(&[]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[2]), &p(&[2, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2, 1])), 0); // weight mismatch
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1, 1]), &p(&[2, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[2]), &p(&[2, 2])), 1);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[2]), &p(&[3, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[2]), &p(&[4])), 1);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[2]), &p(&[2, 1, 1])), 0);
    }

    #[test]
    fn multiplicity_two() {
        // the classical first multiplicity in s(2,1)·s(2,1)
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[4, 2])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[2, 2, 2])), 1);
    }

    #[test]
    fn symmetry_in_lambda_mu() {
        let cases = [
            (p(&[2, 1]), p(&[3, 1])),
            (p(&[2, 2]), p(&[2, 1])),
            (p(&[3]), p(&[1, 1, 1])),
        ];
        for (a, b) in cases {
            for nu in crate::partition::partitions_in_rectangle(crate::partition::Rectangle {
                rows: 4,
                cols: 5,
            }) {
                assert_eq!(
                    lr_coefficient(&a, &b, &nu),
                    lr_coefficient(&b, &a, &nu),
                    "asymmetry at nu={nu}"
                );
            }
        }
    }
}
