//! Finite-dimensional graded-commutative algebras given by structure constants.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linear::{rat, sign_pow, Linear};

/// Finite graded-commutative algebra with basis `0..dim`; basis element 0 is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableAlgebra {
    names: Vec<String>,
    degrees: Vec<i64>,
    // products[i][j] = e_i · e_j
    products: Vec<Vec<Linear<usize>>>,
}

impl TableAlgebra {
    /// The one-dimensional algebra `Q`.
    pub fn trivial() -> Self {
        TableAlgebra {
            names: vec!["1".to_string()],
            degrees: vec![0],
            products: vec![vec![Linear::basis(0)]],
        }
    }

    /// Builds the table from the products that are listed explicitly.
    ///
    /// Products with the unit are implied. A missing `e_i·e_j` is taken from a listed
    /// `e_j·e_i` through graded commutativity, and is zero otherwise. The result is checked
    /// for homogeneity, graded commutativity and associativity.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i64>,
        listed: BTreeMap<(usize, usize), Linear<usize>>,
    ) -> Result<Self> {
        let dim = names.len();
        if dim == 0 || degrees.len() != dim {
            return Err(Error::InvalidModel(
                "table algebra needs matching non-empty names and degrees".into(),
            ));
        }
        if degrees[0] != 0 {
            return Err(Error::InvalidModel(format!(
                "unit `{}` must have degree 0",
                names[0]
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Signature(format!("duplicate basis name `{n}`")));
            }
        }
        let mut products = vec![vec![Linear::zero(); dim]; dim];
        for (i, row) in products.iter_mut().enumerate() {
            row[0] = Linear::basis(i);
        }
        for (i, p) in products[0].iter_mut().enumerate() {
            *p = Linear::basis(i);
        }
        for (&(i, j), v) in &listed {
            if i >= dim || j >= dim || v.keys().any(|&k| k >= dim) {
                return Err(Error::Signature(format!(
                    "product entry ({i},{j}) refers to a missing basis element"
                )));
            }
            if i == 0 || j == 0 {
                if *v != products[i][j] {
                    return Err(Error::InvalidModel(format!(
                        "product with the unit `{}` must be the identity",
                        names[0]
                    )));
                }
                continue;
            }
            products[i][j] = v.clone();
        }
        for (&(i, j), v) in &listed {
            if i != 0 && j != 0 && !listed.contains_key(&(j, i)) {
                products[j][i] = v.scaled_int(sign_pow(degrees[i] * degrees[j]));
            }
        }
        let table = TableAlgebra {
            names,
            degrees,
            products,
        };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let p = &self.products[i][j];
                let want = self.degrees[i] + self.degrees[j];
                if let Some(&k) = p.keys().find(|&&k| self.degrees[k] != want) {
                    return Err(Error::InvalidModel(format!(
                        "{}·{} contains `{}` of degree {} (expected {want})",
                        self.names[i], self.names[j], self.names[k], self.degrees[k]
                    )));
                }
                let swapped =
                    self.products[j][i].scaled_int(sign_pow(self.degrees[i] * self.degrees[j]));
                if *p != swapped {
                    return Err(Error::InvalidModel(format!(
                        "{}·{} is not graded commutative",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = self.mul(&self.mul_basis(i, j), &Linear::basis(k));
                    let right = self.mul(&Linear::basis(i), &self.mul_basis(j, k));
                    if left != right {
                        return Err(Error::InvalidModel(format!(
                            "product is not associative on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 1
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Linear<usize> {
        self.products[i][j].clone()
    }

    pub fn products_row(&self, i: usize, j: usize) -> &Linear<usize> {
        &self.products[i][j]
    }

    pub fn mul(&self, a: &Linear<usize>, b: &Linear<usize>) -> Linear<usize> {
        let mut out = Linear::zero();
        for (&i, ca) in a {
            for (&j, cb) in b {
                out.add_scaled(&self.products[i][j], &(ca * cb));
            }
        }
        out
    }

    /// Koszul-signed tensor product; basis `(i, j)` is stored at `i * other.dim() + j`.
    pub fn tensor(&self, other: &TableAlgebra) -> TableAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let mut names = Vec::with_capacity(n * m);
        let mut degrees = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                names.push(match (i, j) {
                    (0, 0) => "1".to_string(),
                    (_, 0) => self.names[i].clone(),
                    (0, _) => other.names[j].clone(),
                    _ => format!("{}_{}", self.names[i], other.names[j]),
                });
                degrees.push(self.degrees[i] + other.degrees[j]);
            }
        }
        let mut products = vec![vec![Linear::zero(); n * m]; n * m];
        for a1 in 0..n {
            for a2 in 0..m {
                for b1 in 0..n {
                    for b2 in 0..m {
                        let sign = sign_pow(other.degrees[a2] * self.degrees[b1]);
                        let mut p = Linear::zero();
                        for (&k1, c1) in &self.products[a1][b1] {
                            for (&k2, c2) in &other.products[a2][b2] {
                                p.add_term(k1 * m + k2, c1 * c2 * rat(sign));
                            }
                        }
                        products[a1 * m + a2][b1 * m + b2] = p;
                    }
                }
            }
        }
        TableAlgebra {
            names,
            degrees,
            products,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere_s2() -> TableAlgebra {
        // ℍ*(S²): unit [M] in degree 0 and the point class in degree −2, pt·pt = 0
        TableAlgebra::new(vec!["M".into(), "pt".into()], vec![0, -2], BTreeMap::new()).unwrap()
    }

    #[test]
    fn unit_and_missing_products() {
        let t = sphere_s2();
        assert_eq!(t.mul_basis(0, 1), Linear::basis(1));
        assert!(t.mul_basis(1, 1).is_zero());
    }

    #[test]
    fn reverse_product_gets_koszul_sign() {
        let mut listed = BTreeMap::new();
        listed.insert((1, 2), Linear::basis(3));
        let t = TableAlgebra::new(
            vec!["M".into(), "a".into(), "b".into(), "ab".into()],
            vec![0, -1, -3, -4],
            listed,
        )
        .unwrap();
        assert_eq!(t.mul_basis(2, 1), Linear::basis(3).neg());
    }

    #[test]
    fn rejects_inhomogeneous_products() {
        let mut listed = BTreeMap::new();
        listed.insert((1, 1), Linear::basis(0));
        let err = TableAlgebra::new(vec!["M".into(), "pt".into()], vec![0, -2], listed);
        assert!(matches!(err, Err(Error::InvalidModel(_))));
    }

    #[test]
    fn rejects_non_commutative_tables() {
        let mut listed = BTreeMap::new();
        listed.insert((1, 2), Linear::basis(3));
        listed.insert((2, 1), Linear::basis(3));
        let err = TableAlgebra::new(
            vec!["M".into(), "a".into(), "b".into(), "ab".into()],
            vec![0, -1, -1, -2],
            listed,
        );
        assert!(matches!(err, Err(Error::InvalidModel(_))));
    }

    #[test]
    fn tensor_of_odd_classes_anticommutes() {
        let odd =
            TableAlgebra::new(vec!["M".into(), "a".into()], vec![0, -1], BTreeMap::new()).unwrap();
        let t = odd.tensor(&odd);
        // (a⊗1)(1⊗a) = a⊗a, (1⊗a)(a⊗1) = −a⊗a
        assert_eq!(t.mul_basis(2, 1), Linear::basis(3));
        assert_eq!(t.mul_basis(1, 2), Linear::basis(3).neg());
        assert_eq!(t.degree(3), -2);
    }
}
