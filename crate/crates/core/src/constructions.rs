//! The explicit optimal labelings behind each closed-form value, packaged as
//! certificates.
//!
//! Every constructor runs its output through the verifier before returning;
//! a pattern that fails verification surfaces as
//! [`Error::ConstructionFailed`], never silently.

use std::fmt;

use crate::digraph::{ProductInstance, ProductKind};
use crate::error::{Error, Result};
use crate::idf::{self, Labeling};

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateSource {
    /// Both cartesian factors even: 1s where row and column parity agree.
    EvenEvenDiagonal,
    /// Two rows, odd column count: alternating rows plus one extra 1 in the
    /// last column.
    TwoRowAlternating,
    /// Three rows, column count 0 mod 3: the rotating two-of-three-rows
    /// pattern.
    ThreeRowResidue0,
    /// Three rows, column count 1 mod 3: rotating pattern, one tail column
    /// overridden.
    ThreeRowResidue1,
    /// Three rows, column count 2 mod 3: rotating pattern, two tail columns
    /// overridden.
    ThreeRowResidue2,
    /// Strong product, even column count: all-ones on alternate columns.
    StrongEvenColumns,
    /// Strong product, both factors odd: 1s where row and column parity
    /// agree.
    StrongOddOddCheckerboard,
}

impl CertificateSource {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateSource::EvenEvenDiagonal => "even_even_diagonal",
            CertificateSource::TwoRowAlternating => "two_row_alternating",
            CertificateSource::ThreeRowResidue0 => "three_row_residue0",
            CertificateSource::ThreeRowResidue1 => "three_row_residue1",
            CertificateSource::ThreeRowResidue2 => "three_row_residue2",
            CertificateSource::StrongEvenColumns => "strong_even_columns",
            CertificateSource::StrongOddOddCheckerboard => "strong_odd_odd_checkerboard",
        }
    }
}

impl fmt::Display for CertificateSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A labeling, the weight it claims, and the construction it came from.
/// Certificates only exist after passing the verifier, so one in hand is an
/// upper-bound witness: `gamma_I <= claimed_weight`.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub instance: ProductInstance,
    pub labeling: Labeling,
    pub claimed_weight: u32,
    pub source: CertificateSource,
}

impl Certificate {
    fn checked(
        instance: ProductInstance,
        labeling: Labeling,
        claimed_weight: u32,
        source: CertificateSource,
    ) -> Result<Self> {
        let fail = |reason: String| Error::ConstructionFailed {
            construction: source.to_string(),
            instance: instance.to_string(),
            reason,
        };
        if labeling.weight() != claimed_weight {
            return Err(fail(format!(
                "weight {} does not match claimed {claimed_weight}",
                labeling.weight()
            )));
        }
        let digraph = instance.digraph();
        if let Some(v) = idf::first_undominated(&digraph, &labeling)? {
            let (i, j) = instance.coords(v);
            return Err(fail(format!("vertex ({i},{j}) is not dominated")));
        }
        Ok(Self {
            instance,
            labeling,
            claimed_weight,
            source,
        })
    }

    /// The same certificate for the factor-swapped instance, relabeled
    /// through `(i, j) -> (j, i)` and re-verified.
    pub fn transposed(&self) -> Result<Self> {
        let labeling = idf::transpose_product_labeling(&self.instance, &self.labeling)?;
        Self::checked(
            self.instance.swapped(),
            labeling,
            self.claimed_weight,
            self.source,
        )
    }

    /// Text form: a `# kind m n claimed_weight source` header, a coordinate
    /// convention comment, then the digit grid.
    pub fn emit(&self) -> String {
        let grid = idf::write_grid(&self.instance, &self.labeling)
            .expect("certificate labeling matches its instance");
        format!(
            "# {} {} {} {} {}\n\
             # rows are the first factor, columns the second; grid entry (i, j) is vertex (i+1, j+1) in 1-based coordinates\n\
             {grid}",
            self.instance.kind(),
            self.instance.m(),
            self.instance.n(),
            self.claimed_weight,
            self.source,
        )
    }
}

fn grid_labeling(
    inst: &ProductInstance,
    mut one_at: impl FnMut(usize, usize) -> bool,
) -> Labeling {
    Labeling::from_fn(inst.order(), |v| {
        let (i, j) = inst.coords(v);
        u8::from(one_at(i, j))
    })
    .expect("0/1 labels are valid")
}

/// `C_2r x C_2s` cartesian: 1s exactly where row and column parity agree,
/// weight `mn/2`. Every 0 vertex then sees two 1s (row above, column left).
pub fn construct_cartesian_even_even(r: usize, s: usize) -> Result<Certificate> {
    if r < 1 || s < 1 {
        return Err(Error::Parameter(format!(
            "half-lengths must be at least 1, got r={r}, s={s}"
        )));
    }
    let inst = ProductInstance::new(ProductKind::Cartesian, 2 * r, 2 * s)?;
    let labeling = grid_labeling(&inst, |i, j| i % 2 == j % 2);
    Certificate::checked(
        inst,
        labeling,
        (inst.order() / 2) as u32,
        CertificateSource::EvenEvenDiagonal,
    )
}

/// `C_2 x C_n` cartesian for odd `n >= 3`: row 0 on even columns, row 1 on
/// odd columns plus the final column. Weight `n + 1`.
pub fn construct_cartesian_2_odd(n: usize) -> Result<Certificate> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "column count must be odd and at least 3, got {n}"
        )));
    }
    let inst = ProductInstance::new(ProductKind::Cartesian, 2, n)?;
    let labeling = grid_labeling(&inst, |i, j| match i {
        0 => j % 2 == 0,
        _ => j % 2 == 1 || j == n - 1,
    });
    Certificate::checked(
        inst,
        labeling,
        (n + 1) as u32,
        CertificateSource::TwoRowAlternating,
    )
}

/// `C_3 x C_n` cartesian for `n >= 3`: per column residue `j mod 3` the
/// 1-rows rotate through {0,1}, {1,2}, {0,2} over the first `3*(n/3)`
/// columns; when `n mod 3 == 1` the single tail column takes rows {1,2},
/// and when `n mod 3 == 2` the two tail columns take rows {0,1} then
/// {0,2}. Weight `2n` in every case.
pub fn construct_cartesian_3_any(n: usize) -> Result<Certificate> {
    if n < 3 {
        return Err(Error::Parameter(format!(
            "column count must be at least 3, got {n}"
        )));
    }
    let inst = ProductInstance::new(ProductKind::Cartesian, 3, n)?;
    let rotating_cols = 3 * (n / 3);
    let labeling = grid_labeling(&inst, |i, j| {
        if j < rotating_cols {
            match j % 3 {
                0 => i == 0 || i == 1,
                1 => i == 1 || i == 2,
                _ => i == 0 || i == 2,
            }
        } else if n % 3 == 1 {
            i == 1 || i == 2
        } else if j == n - 2 {
            i == 0 || i == 1
        } else {
            i == 0 || i == 2
        }
    });
    let source = match n % 3 {
        0 => CertificateSource::ThreeRowResidue0,
        1 => CertificateSource::ThreeRowResidue1,
        _ => CertificateSource::ThreeRowResidue2,
    };
    Certificate::checked(inst, labeling, 2 * n as u32, source)
}

/// `C_m x C_2s` strong: all-ones on every second column, weight `mn/2`.
/// Each 0 vertex sees three entries of the previous all-ones column minus
/// one, which already sums to 2.
pub fn construct_strong_even(m: usize, s: usize) -> Result<Certificate> {
    if m < 2 || s < 1 {
        return Err(Error::Parameter(format!(
            "need m >= 2 rows and s >= 1 column pairs, got m={m}, s={s}"
        )));
    }
    let inst = ProductInstance::new(ProductKind::Strong, m, 2 * s)?;
    let labeling = grid_labeling(&inst, |_, j| j % 2 == 0);
    Certificate::checked(
        inst,
        labeling,
        (inst.order() / 2) as u32,
        CertificateSource::StrongEvenColumns,
    )
}

/// `C_2r+1 x C_2s+1` strong: 1s where row and column parity agree, weight
/// `(r+1)(s+1) + rs = ceil(mn/2)`.
pub fn construct_strong_odd_odd(r: usize, s: usize) -> Result<Certificate> {
    if r < 1 || s < 1 {
        return Err(Error::Parameter(format!(
            "half-lengths must be at least 1, got r={r}, s={s}"
        )));
    }
    let inst = ProductInstance::new(ProductKind::Strong, 2 * r + 1, 2 * s + 1)?;
    let labeling = grid_labeling(&inst, |i, j| i % 2 == j % 2);
    Certificate::checked(
        inst,
        labeling,
        ((r + 1) * (s + 1) + r * s) as u32,
        CertificateSource::StrongOddOddCheckerboard,
    )
}

/// The proven exact gamma_I when one exists for this instance:
///
/// * cartesian, both factors even: `mn/2`
/// * cartesian, smaller factor 2 (other odd): `max + 1`
/// * cartesian, smaller factor 3: `2 * max`
/// * strong, any `m, n >= 2`: `ceil(mn/2)`
///
/// Returns `None` for the open cartesian cases (both factors at least 4 and
/// not both even).
pub fn closed_form_gamma(inst: &ProductInstance) -> Option<u32> {
    let (m, n) = (inst.m(), inst.n());
    match inst.kind() {
        ProductKind::Strong => Some((inst.order() as u64).div_ceil(2) as u32),
        ProductKind::Cartesian => {
            if m % 2 == 0 && n % 2 == 0 {
                Some((inst.order() / 2) as u32)
            } else if m.min(n) == 2 {
                Some(m.max(n) as u32 + 1)
            } else if m.min(n) == 3 {
                Some(2 * m.max(n) as u32)
            } else {
                None
            }
        }
    }
}

/// The optimal construction matching [`closed_form_gamma`], transposing
/// factors where the pattern is stated for the other orientation. Returns
/// `None` exactly when no closed form covers the instance.
pub fn certificate_for(inst: &ProductInstance) -> Result<Option<Certificate>> {
    let (m, n) = (inst.m(), inst.n());
    let cert = match inst.kind() {
        ProductKind::Cartesian => {
            if m % 2 == 0 && n % 2 == 0 {
                Some(construct_cartesian_even_even(m / 2, n / 2)?)
            } else if m == 2 {
                Some(construct_cartesian_2_odd(n)?)
            } else if n == 2 {
                Some(construct_cartesian_2_odd(m)?.transposed()?)
            } else if m == 3 {
                Some(construct_cartesian_3_any(n)?)
            } else if n == 3 {
                Some(construct_cartesian_3_any(m)?.transposed()?)
            } else {
                None
            }
        }
        ProductKind::Strong => {
            if n % 2 == 0 {
                Some(construct_strong_even(m, n / 2)?)
            } else if m % 2 == 0 {
                Some(construct_strong_even(n, m / 2)?.transposed()?)
            } else {
                Some(construct_strong_odd_odd((m - 1) / 2, (n - 1) / 2)?)
            }
        }
    };
    Ok(cert)
}
