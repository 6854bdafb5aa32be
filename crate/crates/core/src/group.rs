//! Finite matrix groups given by generators.

use std::collections::HashMap;

use crate::error::{check_field, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// A finite subgroup of `GL(d, k)`. Elements are listed in breadth-first
/// closure order starting from the identity (index 0).
#[derive(Clone, Debug)]
pub struct GroupRep {
    field: Field,
    dim: usize,
    elements: Vec<Matrix>,
    generators: Vec<usize>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

pub fn close_group(field: Field, dim: usize, generators: &[Matrix]) -> Result<GroupRep> {
    close_group_bounded(field, dim, generators, DEFAULT_ORDER_BOUND)
}

pub fn close_group_bounded(
    field: Field,
    dim: usize,
    generators: &[Matrix],
    bound: usize,
) -> Result<GroupRep> {
    for g in generators {
        check_field(field, g.field())?;
        if g.nrows() != dim || g.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{}, expected {dim}x{dim}",
                g.nrows(),
                g.ncols()
            )));
        }
        if g.inverse().is_none() {
            return Err(Error::NotInvertible);
        }
    }
    let mut elements = vec![Matrix::identity(field, dim)];
    let mut index: HashMap<Matrix, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut next = 0;
    while next < elements.len() {
        for g in generators {
            let h = elements[next].mul(g);
            if !index.contains_key(&h) {
                if elements.len() == bound {
                    return Err(Error::OrderBoundExceeded(bound));
                }
                index.insert(h.clone(), elements.len());
                elements.push(h);
            }
        }
        next += 1;
    }
    let n = elements.len();
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&a.mul(b)]).collect())
        .collect();
    let inverses = (0..n)
        .map(|i| (0..n).find(|&j| table[i][j] == 0).expect("finite group has inverses"))
        .collect();
    let generators = generators.iter().map(|g| index[g]).collect();
    Ok(GroupRep {
        field,
        dim,
        elements,
        generators,
        table,
        inverses,
    })
}

impl GroupRep {
    pub fn trivial(field: Field, dim: usize) -> GroupRep {
        close_group(field, dim, &[]).expect("trivial group")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Indices of the generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Index of `elements[a] · elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn cayley_table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        let q = Field::Rationals;
        let g = close_group(q, 1, &[Matrix::from_i64(q, &[&[-1]])]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(close_group(q, 2, &[]).unwrap().order(), 1);
        let klein = close_group(
            q,
            2,
            &[
                Matrix::from_i64(q, &[&[1, 0], &[0, -1]]),
                Matrix::from_i64(q, &[&[-1, 0], &[0, 1]]),
            ],
        )
        .unwrap();
        assert_eq!(klein.order(), 4);
        for a in 0..4 {
            assert_eq!(klein.mul(a, klein.inverse(a)), 0);
            assert_eq!(klein.mul(a, a), 0);
        }
    }

    #[test]
    fn closure_errors() {
        let q = Field::Rationals;
        assert_eq!(
            close_group(q, 1, &[Matrix::from_i64(q, &[&[0]])]).unwrap_err(),
            Error::NotInvertible
        );
        assert_eq!(
            close_group(q, 1, &[Matrix::from_i64(q, &[&[2]])]).unwrap_err(),
            Error::OrderBoundExceeded(DEFAULT_ORDER_BOUND)
        );
    }

    #[test]
    fn cyclic_of_order_six_mod_seven() {
        let f7 = Field::Prime(7);
        let g = close_group(f7, 1, &[Matrix::from_i64(f7, &[&[3]])]).unwrap();
        assert_eq!(g.order(), 6);
    }
}
