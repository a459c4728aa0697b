use num_bigint::BigInt;

use super::SeriesError;

/// Intersection lattice of a surface with its canonical class and named
/// fiber and section classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceData {
    name: String,
    gram: Vec<Vec<i64>>,
    canonical: Vec<i64>,
    fiber: Vec<i64>,
    sections: Vec<Vec<i64>>,
}

impl SurfaceData {
    pub fn new(
        name: &str,
        gram: Vec<Vec<i64>>,
        canonical: Vec<i64>,
        fiber: Vec<i64>,
        sections: Vec<Vec<i64>>,
    ) -> Result<Self, SeriesError> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(SeriesError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(SeriesError::NotSymmetric);
                }
            }
        }
        for v in std::iter::once(&canonical).chain([&fiber]).chain(&sections) {
            if v.len() != n {
                return Err(SeriesError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        Ok(SurfaceData {
            name: name.to_string(),
            gram,
            canonical,
            fiber,
            sections,
        })
    }

    /// `P¹ × T²` in the basis `(𝔰, 𝔣)`, with `K = −2𝔣`.
    pub fn p1_t2() -> Self {
        Self::new(
            "P1xT2",
            vec![vec![0, 1], vec![1, 0]],
            vec![0, -2],
            vec![0, 1],
            vec![vec![1, 0]],
        )
        .expect("valid lattice")
    }

    /// The rational elliptic surface in the basis `(𝔰₁, …, 𝔰₉, 𝔣)` with
    /// `𝔰ᵢ² = −1`, `𝔰ᵢ·𝔰ⱼ = 0`, `𝔰ᵢ·𝔣 = 1`, `𝔣² = 0` and `K = −𝔣`.
    ///
    /// This spans an index-3 sublattice of the full second homology, which
    /// is enough for every class that appears here.
    pub fn rational_elliptic() -> Self {
        let n = 10;
        let mut gram = vec![vec![0; n]; n];
        for i in 0..9 {
            gram[i][i] = -1;
            gram[i][9] = 1;
            gram[9][i] = 1;
        }
        let unit = |k: usize| {
            let mut v = vec![0; n];
            v[k] = 1;
            v
        };
        let mut canonical = vec![0; n];
        canonical[9] = -1;
        Self::new(
            "P2_9",
            gram,
            canonical,
            unit(9),
            (0..9).map(unit).collect(),
        )
        .expect("valid lattice")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &[i64] {
        &self.canonical
    }

    pub fn fiber(&self) -> &[i64] {
        &self.fiber
    }

    pub fn sections(&self) -> &[Vec<i64>] {
        &self.sections
    }

    pub fn section(&self, i: usize) -> Result<&[i64], SeriesError> {
        self.sections
            .get(i)
            .map(Vec::as_slice)
            .ok_or(SeriesError::SectionOutOfRange {
                index: i,
                count: self.sections.len(),
            })
    }

    /// `𝔰ᵢ + d𝔣`.
    pub fn section_class(&self, i: usize, d: i64) -> Result<Vec<i64>, SeriesError> {
        let s = self.section(i)?;
        Ok(s.iter().zip(&self.fiber).map(|(a, f)| a + d * f).collect())
    }

    /// `d𝔣`.
    pub fn fiber_class(&self, d: i64) -> Vec<i64> {
        self.fiber.iter().map(|f| d * f).collect()
    }

    /// `Aᵀ Q B`.
    pub fn intersection(&self, a: &[i64], b: &[i64]) -> Result<BigInt, SeriesError> {
        let n = self.rank();
        for v in [a, b] {
            if v.len() != n {
                return Err(SeriesError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let mut total = BigInt::from(0);
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] != 0 && self.gram[i][j] != 0 {
                    total += BigInt::from(a[i]) * b[j] * self.gram[i][j];
                }
            }
        }
        Ok(total)
    }

    /// `|A|_V = A · V` for a divisor of class `V`.
    pub fn degree_along(&self, a: &[i64], divisor: &[i64]) -> Result<BigInt, SeriesError> {
        self.intersection(a, divisor)
    }

    pub fn canonical_degree(&self, a: &[i64]) -> Result<BigInt, SeriesError> {
        self.intersection(&self.canonical, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_elliptic_lattice() {
        let x = SurfaceData::rational_elliptic();
        let zero = vec![0; 10];
        assert_eq!(x.intersection(&zero, &zero).unwrap(), BigInt::from(0));
        for i in 0..9 {
            let s = x.section(i).unwrap();
            assert_eq!(x.intersection(s, s).unwrap(), BigInt::from(-1));
            for j in 0..9 {
                if i != j {
                    assert_eq!(x.intersection(s, x.section(j).unwrap()).unwrap(), BigInt::from(0));
                }
            }
            for d in -5..=30 {
                let a = x.section_class(i, d).unwrap();
                assert_eq!(x.degree_along(&a, x.fiber()).unwrap(), BigInt::from(1));
                assert_eq!(x.canonical_degree(&a).unwrap(), BigInt::from(-1));
                assert_eq!(x.intersection(&a, &a).unwrap(), BigInt::from(2 * d - 1));
            }
        }
    }

    #[test]
    fn p1t2_lattice() {
        let x = SurfaceData::p1_t2();
        for d in 0..10 {
            let a = x.section_class(0, d).unwrap();
            assert_eq!(x.canonical_degree(&a).unwrap(), BigInt::from(-2));
            assert_eq!(x.intersection(&a, &a).unwrap(), BigInt::from(2 * d));
        }
    }

    #[test]
    fn rejects_bad_data() {
        assert_eq!(
            SurfaceData::new("x", vec![vec![0, 1], vec![2, 0]], vec![0, 0], vec![0, 1], vec![]),
            Err(SeriesError::NotSymmetric)
        );
        assert!(SurfaceData::new("x", vec![vec![0]], vec![0, 0], vec![0], vec![]).is_err());
        assert!(SurfaceData::p1_t2().intersection(&[1], &[1, 0]).is_err());
        assert!(SurfaceData::p1_t2().section(3).is_err());
    }
}
