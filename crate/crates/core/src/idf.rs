//! Labelings `f : V -> {0, 1, 2}`, the domination verifier, weights, column
//! profiles, closed-form bounds, and the grid text format.
//!
//! All operations here are pure functions of immutable inputs.

use std::fmt::Write as _;

use crate::digraph::{Digraph, ProductInstance, ProductKind};
use crate::error::{Error, Result};

pub const MAX_LABEL: u8 = 2;

/// A total labeling of a digraph's vertices with values in `{0, 1, 2}`,
/// stored flat by vertex id (one byte per label; desk-scale orders make
/// packing pointless).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    values: Vec<u8>,
}

impl Labeling {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        for (vertex, &value) in values.iter().enumerate() {
            if value > MAX_LABEL {
                return Err(Error::LabelOutOfRange { vertex, value });
            }
        }
        Ok(Self { values })
    }

    pub fn constant(order: usize, label: u8) -> Result<Self> {
        Self::new(vec![label; order])
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> u8) -> Result<Self> {
        Self::new((0..order).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Label of vertex `v`. Panics if `v` is out of range.
    pub fn get(&self, v: usize) -> u8 {
        self.values[v]
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Total weight: the sum of all labels.
    pub fn weight(&self) -> u32 {
        self.values.iter().map(|&l| u32::from(l)).sum()
    }
}

fn check_domain(d: &Digraph, f: &Labeling) -> Result<()> {
    if f.len() != d.order() {
        return Err(Error::DomainMismatch {
            expected: d.order(),
            got: f.len(),
        });
    }
    Ok(())
}

fn in_label_sum(d: &Digraph, f: &Labeling, v: usize) -> u32 {
    d.in_neighbors(v).iter().map(|&u| u32::from(f.get(u))).sum()
}

/// Smallest-id vertex labeled 0 whose in-neighbor labels sum below 2, or
/// `None` when `f` dominates `d`.
pub fn first_undominated(d: &Digraph, f: &Labeling) -> Result<Option<usize>> {
    check_domain(d, f)?;
    Ok((0..d.order()).find(|&v| f.get(v) == 0 && in_label_sum(d, f, v) < 2))
}

/// Whether `f` is an Italian dominating function on `d`.
///
/// This checks the sum form: every vertex labeled 0 must see in-neighbor
/// labels summing to at least 2. With labels capped at 2 the sum form is
/// equivalent to the two-case definition (two in-neighbors labeled 1, or one
/// in-neighbor labeled 2): both cases give a sum of at least 2, and
/// conversely a sum of at least 2 over labels bounded by 2 contains either a
/// 2 or two 1s.
pub fn is_idf(d: &Digraph, f: &Labeling) -> Result<bool> {
    Ok(first_undominated(d, f)?.is_none())
}

/// Per-column label sums of a product labeling; entry `k` sums the column of
/// vertices whose second coordinate is `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnProfile {
    column_weights: Vec<u32>,
}

impl ColumnProfile {
    pub fn column_weights(&self) -> &[u32] {
        &self.column_weights
    }

    pub fn total(&self) -> u32 {
        self.column_weights.iter().sum()
    }
}

pub fn column_profile(inst: &ProductInstance, f: &Labeling) -> Result<ColumnProfile> {
    if f.len() != inst.order() {
        return Err(Error::DomainMismatch {
            expected: inst.order(),
            got: f.len(),
        });
    }
    let mut column_weights = vec![0u32; inst.n()];
    for i in 0..inst.m() {
        for (j, weight) in column_weights.iter_mut().enumerate() {
            *weight += u32::from(f.get(inst.vertex_id(i, j)));
        }
    }
    Ok(ColumnProfile { column_weights })
}

/// The labeling of the factor-swapped instance obtained through
/// `(i, j) -> (j, i)`.
pub fn transpose_product_labeling(inst: &ProductInstance, f: &Labeling) -> Result<Labeling> {
    if f.len() != inst.order() {
        return Err(Error::DomainMismatch {
            expected: inst.order(),
            got: f.len(),
        });
    }
    let swapped = inst.swapped();
    Labeling::from_fn(swapped.order(), |v| {
        let (i, j) = swapped.coords(v);
        f.get(inst.vertex_id(j, i))
    })
}

/// `ceil(2n / (2 + max out-degree))`: a weight floor valid for every digraph.
pub fn general_lower_bound(d: &Digraph) -> u32 {
    let n = d.order() as u64;
    let divisor = 2 + d.max_out_degree() as u64;
    (2 * n).div_ceil(divisor) as u32
}

/// True exactly when gamma_I equals the order: maximum in- and out-degree
/// both at most 1. Callers may then report `order` without solving.
pub fn order_upper_bound_is_tight(d: &Digraph) -> bool {
    d.max_out_degree() <= 1 && d.max_in_degree() <= 1
}

/// `ceil(mn / 2)`: the pairwise column bound for strong cycle products
/// (consecutive column weights must sum to at least m). Rejected for
/// cartesian instances, whose in-neighborhoods do not support the argument.
pub fn strong_column_lower_bound(inst: &ProductInstance) -> Result<u32> {
    if inst.kind() != ProductKind::Strong {
        return Err(Error::WrongProductKind {
            op: "strong_column_lower_bound",
            expected: "strong",
        });
    }
    Ok((inst.order() as u64).div_ceil(2) as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBoundSource {
    GeneralDegreeBound,
    StrongColumnBound,
    /// Reserved for bounds not derived from structure.
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBoundSource {
    OrderBound,
    Certificate,
}

/// The sandwich `lower <= gamma_I <= upper` with the source of each side.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport {
    pub lower: u32,
    pub upper: u32,
    pub lower_source: LowerBoundSource,
    pub upper_source: UpperBoundSource,
}

impl BoundReport {
    /// Bounds for an arbitrary digraph: degree floor, order ceiling
    /// (tightened when a certificate weight is known).
    pub fn for_digraph(d: &Digraph, certificate_weight: Option<u32>) -> Self {
        let (upper, upper_source) = match certificate_weight {
            Some(w) => (w, UpperBoundSource::Certificate),
            None => (d.order() as u32, UpperBoundSource::OrderBound),
        };
        Self {
            lower: general_lower_bound(d),
            upper,
            lower_source: LowerBoundSource::GeneralDegreeBound,
            upper_source,
        }
    }

    /// Bounds for a cycle product without expanding the digraph: the max
    /// out-degree is 2 (cartesian) or 3 (strong), and the column bound wins
    /// on strong instances.
    pub fn for_instance(inst: &ProductInstance, certificate_weight: Option<u32>) -> Self {
        let order = inst.order() as u64;
        let dplus: u64 = match inst.kind() {
            ProductKind::Cartesian => 2,
            ProductKind::Strong => 3,
        };
        let general = (2 * order).div_ceil(2 + dplus) as u32;
        let (lower, lower_source) = match inst.kind() {
            ProductKind::Cartesian => (general, LowerBoundSource::GeneralDegreeBound),
            ProductKind::Strong => {
                let column = order.div_ceil(2) as u32;
                if column > general {
                    (column, LowerBoundSource::StrongColumnBound)
                } else {
                    (general, LowerBoundSource::GeneralDegreeBound)
                }
            }
        };
        let (upper, upper_source) = match certificate_weight {
            Some(w) => (w, UpperBoundSource::Certificate),
            None => (inst.order() as u32, UpperBoundSource::OrderBound),
        };
        debug_assert!(lower <= upper);
        Self {
            lower,
            upper,
            lower_source,
            upper_source,
        }
    }
}

/// Renders a product labeling as its grid text: `m` lines of `n` digits,
/// row-major. Round-trips losslessly through [`parse_grid`].
pub fn write_grid(inst: &ProductInstance, f: &Labeling) -> Result<String> {
    if f.len() != inst.order() {
        return Err(Error::DomainMismatch {
            expected: inst.order(),
            got: f.len(),
        });
    }
    let mut text = String::with_capacity(inst.order() + inst.m());
    for i in 0..inst.m() {
        for j in 0..inst.n() {
            write!(text, "{}", f.get(inst.vertex_id(i, j))).unwrap();
        }
        text.push('\n');
    }
    Ok(text)
}

/// Parses the grid format: one row of digits per line; blank lines and
/// `#` comment lines are skipped. Errors carry 1-based line numbers.
pub fn parse_grid(input: &str, m: usize, n: usize) -> Result<Labeling> {
    let mut values = Vec::with_capacity(m * n);
    let mut rows = 0usize;
    let mut last_line = 0usize;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if rows == m {
            return Err(Error::Parse {
                line,
                msg: format!("expected {m} rows, found an extra row"),
            });
        }
        let mut cols = 0usize;
        for ch in content.chars() {
            if ch.is_whitespace() {
                continue;
            }
            match ch {
                '0' | '1' | '2' => {
                    values.push(ch as u8 - b'0');
                    cols += 1;
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("invalid label character {ch:?} (expected 0, 1 or 2)"),
                    })
                }
            }
        }
        if cols != n {
            return Err(Error::Parse {
                line,
                msg: format!("expected {n} columns, found {cols}"),
            });
        }
        rows += 1;
    }
    if rows != m {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("expected {m} rows, found {rows}"),
        });
    }
    Labeling::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::directed_cycle;

    fn cart(m: usize, n: usize) -> ProductInstance {
        ProductInstance::new(ProductKind::Cartesian, m, n).unwrap()
    }

    fn strong(m: usize, n: usize) -> ProductInstance {
        ProductInstance::new(ProductKind::Strong, m, n).unwrap()
    }

    #[test]
    fn all_ones_is_always_an_idf() {
        for d in [
            directed_cycle(4).unwrap(),
            cart(2, 3).digraph(),
            strong(3, 3).digraph(),
        ] {
            let f = Labeling::constant(d.order(), 1).unwrap();
            assert!(is_idf(&d, &f).unwrap());
        }
    }

    #[test]
    fn all_zeros_dominates_nothing() {
        let c3 = directed_cycle(3).unwrap();
        let f = Labeling::constant(3, 0).unwrap();
        assert!(!is_idf(&c3, &f).unwrap());
        assert_eq!(first_undominated(&c3, &f).unwrap(), Some(0));
    }

    #[test]
    fn single_two_on_c3_leaves_a_gap() {
        // f = (2,0,0): vertex 1 sees label 2, vertex 2 sees only vertex 1's 0
        let c3 = directed_cycle(3).unwrap();
        let f = Labeling::new(vec![2, 0, 0]).unwrap();
        assert!(!is_idf(&c3, &f).unwrap());
        assert_eq!(first_undominated(&c3, &f).unwrap(), Some(2));
    }

    #[test]
    fn domain_mismatch_rejected() {
        let c3 = directed_cycle(3).unwrap();
        let f = Labeling::constant(4, 1).unwrap();
        assert!(matches!(
            is_idf(&c3, &f),
            Err(Error::DomainMismatch { expected: 3, got: 4 })
        ));
    }

    #[test]
    fn labels_above_two_rejected() {
        assert!(matches!(
            Labeling::new(vec![0, 3]),
            Err(Error::LabelOutOfRange { vertex: 1, value: 3 })
        ));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(Labeling::constant(7, 0).unwrap().weight(), 0);
        assert_eq!(Labeling::constant(5, 1).unwrap().weight(), 5);
        assert_eq!(Labeling::new(vec![2, 1, 0, 2]).unwrap().weight(), 5);
    }

    #[test]
    fn column_profile_examples() {
        let inst = cart(3, 4);
        let ones = Labeling::constant(12, 1).unwrap();
        let profile = column_profile(&inst, &ones).unwrap();
        assert_eq!(profile.column_weights(), &[3, 3, 3, 3]);
        assert_eq!(profile.total(), ones.weight());

        let zeros = Labeling::constant(12, 0).unwrap();
        assert_eq!(
            column_profile(&inst, &zeros).unwrap().column_weights(),
            &[0, 0, 0, 0]
        );

        let short = Labeling::constant(9, 1).unwrap();
        assert!(column_profile(&inst, &short).is_err());
    }

    #[test]
    fn general_lower_bound_examples() {
        assert_eq!(general_lower_bound(&directed_cycle(7).unwrap()), 5);
        // cartesian products have max out-degree 2: ceil(mn/2)
        assert_eq!(general_lower_bound(&cart(3, 4).digraph()), 6);
        assert_eq!(general_lower_bound(&cart(2, 2).digraph()), 2);
        // strong products have max out-degree 3: ceil(2mn/5)
        assert_eq!(general_lower_bound(&strong(3, 3).digraph()), 4);
    }

    #[test]
    fn order_bound_tightness() {
        assert!(order_upper_bound_is_tight(&directed_cycle(9).unwrap()));
        assert!(order_upper_bound_is_tight(
            &crate::digraph::directed_path(5).unwrap()
        ));
        assert!(!order_upper_bound_is_tight(&cart(2, 2).digraph()));
    }

    #[test]
    fn strong_column_bound_examples() {
        assert_eq!(strong_column_lower_bound(&strong(3, 3)).unwrap(), 5);
        assert_eq!(strong_column_lower_bound(&strong(2, 2)).unwrap(), 2);
        assert_eq!(strong_column_lower_bound(&strong(5, 7)).unwrap(), 18);
        assert!(matches!(
            strong_column_lower_bound(&cart(3, 3)),
            Err(Error::WrongProductKind { .. })
        ));
    }

    #[test]
    fn bound_report_for_plain_digraphs() {
        let report = BoundReport::for_digraph(&directed_cycle(7).unwrap(), None);
        assert_eq!(report.lower, 5);
        assert_eq!(report.upper, 7);
        assert_eq!(report.lower_source, LowerBoundSource::GeneralDegreeBound);
        assert_eq!(report.upper_source, UpperBoundSource::OrderBound);

        let report = BoundReport::for_digraph(&strong(3, 3).digraph(), Some(5));
        assert_eq!(report.lower, 4);
        assert_eq!(report.upper, 5);
        assert_eq!(report.upper_source, UpperBoundSource::Certificate);
    }

    #[test]
    fn bound_report_prefers_the_winning_source() {
        let report = BoundReport::for_instance(&strong(4, 4), None);
        assert_eq!(report.lower, 8);
        assert_eq!(report.lower_source, LowerBoundSource::StrongColumnBound);
        assert_eq!(report.upper, 16);
        assert_eq!(report.upper_source, UpperBoundSource::OrderBound);

        let report = BoundReport::for_instance(&cart(3, 4), Some(8));
        assert_eq!(report.lower, 6);
        assert_eq!(report.lower_source, LowerBoundSource::GeneralDegreeBound);
        assert_eq!(report.upper, 8);
        assert_eq!(report.upper_source, UpperBoundSource::Certificate);
    }

    #[test]
    fn grid_round_trip() {
        let inst = cart(3, 4);
        let f = Labeling::new(vec![1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 1, 0]).unwrap();
        let text = write_grid(&inst, &f).unwrap();
        assert_eq!(text, "1010\n1101\n0110\n");
        assert_eq!(parse_grid(&text, 3, 4).unwrap(), f);
    }

    #[test]
    fn grid_parser_reports_line_numbers() {
        match parse_grid("101\n1x1\n", 2, 3) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("'x'"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }

        match parse_grid("# header\n101\n10\n", 2, 3) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }

        match parse_grid("101\n", 2, 3) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("found 1")),
            other => panic!("expected parse error, got {other:?}"),
        }

        match parse_grid("121\n012\n3", 2, 3) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn grid_skips_comments_and_blanks() {
        let f = parse_grid("# kind m n\n\n12\n 0 1 \n", 2, 2).unwrap();
        assert_eq!(f.values(), &[1, 2, 0, 1]);
    }

    #[test]
    fn transpose_round_trips() {
        let inst = cart(2, 3);
        let f = Labeling::new(vec![0, 1, 2, 2, 1, 0]).unwrap();
        let t = transpose_product_labeling(&inst, &f).unwrap();
        assert_eq!(t.values(), &[0, 2, 1, 1, 2, 0]);
        let back = transpose_product_labeling(&inst.swapped(), &t).unwrap();
        assert_eq!(back, f);
    }
}
