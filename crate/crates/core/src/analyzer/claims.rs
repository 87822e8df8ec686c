//! Published cost figures: the m=4 and m=8 comparison tables and the
//! closed-form scaling formulas.

use std::fmt;

use num_rational::Ratio;

use crate::generators::DesignId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    TCount,
    TDepth,
    Ancilla,
    Garbage,
    Width,
    Depth,
}

impl Metric {
    pub const ALL: [Metric; 6] =
        [Metric::TCount, Metric::TDepth, Metric::Ancilla, Metric::Garbage, Metric::Width, Metric::Depth];

    pub fn name(self) -> &'static str {
        match self {
            Metric::TCount => "t_count",
            Metric::TDepth => "t_depth",
            Metric::Ancilla => "ancilla",
            Metric::Garbage => "garbage",
            Metric::Width => "width",
            Metric::Depth => "depth",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a claimed value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    /// 4-input comparison table.
    TableI,
    /// 8-input comparison table.
    TableII,
    /// Closed-form cost formulas.
    TableIII,
    /// No published value.
    None,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::TableI => "table-1",
            Source::TableII => "table-2",
            Source::TableIII => "table-3-formula",
            Source::None => "none",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Value of a formula cell. Most cells are rational; one involves the
/// logarithm of a factorial and is only available as a float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClaimValue {
    Exact(Ratio<i64>),
    Real(f64),
}

impl ClaimValue {
    pub fn is_integral(&self) -> bool {
        match self {
            ClaimValue::Exact(r) => r.is_integer(),
            ClaimValue::Real(x) => (x - x.round()).abs() < 1e-9,
        }
    }

    pub fn equals(&self, v: i64) -> bool {
        match self {
            ClaimValue::Exact(r) => *r == Ratio::from_integer(v),
            ClaimValue::Real(x) => (x - v as f64).abs() < 1e-9,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            ClaimValue::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            ClaimValue::Real(x) => *x,
        }
    }
}

impl fmt::Display for ClaimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimValue::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ClaimValue::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ClaimValue::Real(x) if (x - x.round()).abs() < 1e-9 => write!(f, "{}", x.round() as i64),
            ClaimValue::Real(x) => write!(f, "{x:.4}"),
        }
    }
}

/// Table value for `(design, m, metric)`, if one is printed.
pub fn table_value(design: DesignId, m: usize, metric: Metric) -> Option<(Source, i64)> {
    use DesignId::*;
    use Metric::*;
    let row: [Option<i64>; 6] = match (design, m) {
        // t_count, t_depth, ancilla, garbage, width, depth
        (POp4Qlzc, 4) => [Some(28), Some(12), Some(1), None, Some(4), Some(42)],
        (TaPOp4Qlzc, 4) => [Some(12), Some(4), Some(1), None, Some(4), Some(32)],
        (TaOpQlzc, 4) => [Some(12), Some(4), Some(4), None, Some(7), Some(47)],
        (TaOpQlzc, 8) => [Some(28), Some(8), Some(8), Some(0), None, Some(103)],
        (TaOpPqlzc, 8) => [Some(42), Some(11), Some(5), Some(3), None, Some(59)],
        (FoTaOpPqlzc, 8) => [Some(42), Some(7), Some(7), Some(3), None, Some(46)],
        _ => return None,
    };
    let source = if m == 4 { Source::TableI } else { Source::TableII };
    let idx = match metric {
        TCount => 0,
        TDepth => 1,
        Ancilla => 2,
        Garbage => 3,
        Width => 4,
        Depth => 5,
    };
    row[idx].map(|v| (source, v))
}

fn r(n: i64) -> Ratio<i64> {
    Ratio::from_integer(n)
}

fn half(n: i64) -> Ratio<i64> {
    Ratio::new(n, 2)
}

fn exact_log2(m: usize) -> Option<i64> {
    m.is_power_of_two().then(|| m.trailing_zeros() as i64)
}

/// Closed-form value of a formula cell, for the three designs the formulas
/// cover. The tree formulas are only evaluated at their native widths.
pub fn closed_form(design: DesignId, m: usize, metric: Metric) -> Option<ClaimValue> {
    let mi = m as i64;
    let mr = r(mi);
    match design {
        DesignId::TaOpQlzc if m >= 1 => {
            let floor_lg = (usize::BITS - 1 - m.leading_zeros()) as i64;
            let v = match metric {
                Metric::TCount => 4 * mi - 4,
                Metric::TDepth => mi,
                Metric::Ancilla => mi,
                Metric::Garbage => 0,
                Metric::Width => 2 * mi + floor_lg + 1,
                Metric::Depth => 14 * (mi - 1) + 2 * mi,
            };
            Some(ClaimValue::Exact(r(v)))
        }
        DesignId::TaOpPqlzc | DesignId::FoTaOpPqlzc if m >= 8 => {
            let l = exact_log2(m)?;
            let lr = r(l);
            let fo = design == DesignId::FoTaOpPqlzc;
            let v = match metric {
                Metric::TCount => r(3) * mr + lr * (half(7) * lr + half(1)) - half(23),
                Metric::TDepth if fo => r(3 * l - 2),
                Metric::TDepth => lr * (half(3) * lr - half(1)) + half(1),
                Metric::Ancilla if fo => half(3) * mr - lr - r(2),
                Metric::Ancilla => Ratio::new(5, 4) * mr - lr - r(2),
                Metric::Garbage => mr - lr - r(2),
                Metric::Width if fo => half(5) * mr - r(1),
                Metric::Width => Ratio::new(9, 4) * mr - r(1),
                Metric::Depth if fo => {
                    let log_fact: f64 = (1..l).map(|k| (k as f64).log2()).sum();
                    return Some(ClaimValue::Real(12.0 * l as f64 + 8.0 + 2.0 * log_fact));
                }
                Metric::Depth => lr * (half(9) * lr + half(15)) - r(1),
            };
            Some(ClaimValue::Exact(v))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_formulas() {
        assert!(closed_form(DesignId::TaOpQlzc, 8, Metric::TCount).unwrap().equals(28));
        assert!(closed_form(DesignId::TaOpQlzc, 8, Metric::Depth).unwrap().equals(114));
        assert!(closed_form(DesignId::TaOpQlzc, 4, Metric::Depth).unwrap().equals(50));
        assert!(closed_form(DesignId::TaOpQlzc, 4, Metric::Width).unwrap().equals(11));
        assert!(closed_form(DesignId::TaOpQlzc, 11, Metric::Width).unwrap().equals(26));
    }

    #[test]
    fn tree_formulas() {
        let tc = closed_form(DesignId::TaOpPqlzc, 8, Metric::TCount).unwrap();
        assert_eq!(tc, ClaimValue::Exact(Ratio::new(91, 2)));
        assert!(!tc.is_integral());
        let td = closed_form(DesignId::TaOpPqlzc, 8, Metric::TDepth).unwrap();
        assert_eq!(td, ClaimValue::Exact(Ratio::new(25, 2)));
        assert!(closed_form(DesignId::FoTaOpPqlzc, 8, Metric::TDepth).unwrap().equals(7));
        assert!(closed_form(DesignId::TaOpPqlzc, 8, Metric::Ancilla).unwrap().equals(5));
        assert!(closed_form(DesignId::FoTaOpPqlzc, 8, Metric::Ancilla).unwrap().equals(7));
        assert!(closed_form(DesignId::TaOpPqlzc, 8, Metric::Garbage).unwrap().equals(3));
        assert!(closed_form(DesignId::TaOpPqlzc, 8, Metric::Width).unwrap().equals(17));
        assert!(closed_form(DesignId::FoTaOpPqlzc, 8, Metric::Width).unwrap().equals(19));
        // 12*3 + 8 + 2*lg(2!) = 46
        assert!(closed_form(DesignId::FoTaOpPqlzc, 8, Metric::Depth).unwrap().equals(46));
        assert!(!closed_form(DesignId::FoTaOpPqlzc, 16, Metric::Depth).unwrap().is_integral());
        assert!(closed_form(DesignId::TaOpPqlzc, 12, Metric::TCount).is_none());
        assert!(closed_form(DesignId::Qlzc, 8, Metric::TCount).is_none());
    }

    #[test]
    fn table_cells() {
        assert_eq!(table_value(DesignId::TaPOp4Qlzc, 4, Metric::TCount), Some((Source::TableI, 12)));
        assert_eq!(table_value(DesignId::FoTaOpPqlzc, 8, Metric::Garbage), Some((Source::TableII, 3)));
        assert_eq!(table_value(DesignId::POp4Qlzc, 4, Metric::Garbage), None);
        assert_eq!(table_value(DesignId::Qlzc, 4, Metric::TCount), None);
    }
}
