//! Character decomposition tables: layouts, component trees, parsing,
//! validation, statistics, coverage analysis and composition planning.

mod analyze;
mod parse;
mod plan;

pub use analyze::{
    component_frequency, coverage_curve, layout_stats, validate, LayoutStats, ValidationReport,
    Violation, ViolationKind,
};
pub use parse::{parse_table, serialize_table, TableError, TableErrorKind};
pub use plan::{expand_nested, CompositionPlan, PlanError, PlanOperand, PlanStep};

use serde::Serialize;
use std::fmt;

/// The six spatial arrangements of a character's components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LayoutKind {
    /// Isolated: the character is not decomposed.
    Nl00,
    /// Left-right, two components.
    Nl01,
    /// Top-bottom, two components.
    Nl02,
    /// Enclosed, two components; eight placement variations.
    Nl03,
    /// Left-middle-right, three components.
    Nl04,
    /// Top-middle-bottom, three components.
    Nl05,
}

impl LayoutKind {
    /// Number of components an entry of this layout carries.
    pub fn arity(self) -> usize {
        match self {
            LayoutKind::Nl00 => 0,
            LayoutKind::Nl01 | LayoutKind::Nl02 | LayoutKind::Nl03 => 2,
            LayoutKind::Nl04 | LayoutKind::Nl05 => 3,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            LayoutKind::Nl00 => "NL00",
            LayoutKind::Nl01 => "NL01",
            LayoutKind::Nl02 => "NL02",
            LayoutKind::Nl03 => "NL03",
            LayoutKind::Nl04 => "NL04",
            LayoutKind::Nl05 => "NL05",
        }
    }

    /// Parse a bare kind tag ("NL01"). Used in configs and model registries
    /// where NL03 needs no variation suffix.
    pub fn parse(tag: &str) -> Option<LayoutKind> {
        match tag {
            "NL00" => Some(LayoutKind::Nl00),
            "NL01" => Some(LayoutKind::Nl01),
            "NL02" => Some(LayoutKind::Nl02),
            "NL03" => Some(LayoutKind::Nl03),
            "NL04" => Some(LayoutKind::Nl04),
            "NL05" => Some(LayoutKind::Nl05),
            _ => None,
        }
    }

    pub const ALL: [LayoutKind; 6] = [
        LayoutKind::Nl00,
        LayoutKind::Nl01,
        LayoutKind::Nl02,
        LayoutKind::Nl03,
        LayoutKind::Nl04,
        LayoutKind::Nl05,
    ];
}

impl fmt::Display for LayoutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A layout kind plus the enclosure variation for NL03 ("NL03-4").
///
/// Invariant: `variation` is `Some` iff `kind` is NL03, and lies in 0..=7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Layout {
    pub kind: LayoutKind,
    pub variation: Option<u8>,
}

impl Layout {
    /// Build a layout, enforcing the variation invariant.
    pub fn new(kind: LayoutKind, variation: Option<u8>) -> Option<Layout> {
        match (kind, variation) {
            (LayoutKind::Nl03, Some(v)) if v <= 7 => Some(Layout { kind, variation }),
            (LayoutKind::Nl03, _) => None,
            (_, None) => Some(Layout { kind, variation: None }),
            (_, Some(_)) => None,
        }
    }

    pub fn plain(kind: LayoutKind) -> Layout {
        debug_assert!(kind != LayoutKind::Nl03);
        Layout { kind, variation: None }
    }

    pub fn enclosed(variation: u8) -> Layout {
        debug_assert!(variation <= 7);
        Layout { kind: LayoutKind::Nl03, variation: Some(variation) }
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    /// Parse a table tag: "NL01", "NL03-2". Bare "NL03" is rejected because
    /// enclosed entries always carry their variation.
    pub fn parse_tag(tag: &str) -> Option<Layout> {
        if let Some(rest) = tag.strip_prefix("NL03-") {
            let v: u8 = rest.parse().ok()?;
            return Layout::new(LayoutKind::Nl03, Some(v));
        }
        let kind = LayoutKind::parse(tag)?;
        Layout::new(kind, None)
    }

    pub fn tag(&self) -> String {
        match self.variation {
            Some(v) => format!("{}-{}", self.kind.tag(), v),
            None => self.kind.tag().to_string(),
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// One operand of a decomposition: a leaf character or a nested composition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentRef {
    Leaf(char),
    Nested(Layout, Vec<ComponentRef>),
}

impl ComponentRef {
    /// Distinct leaf characters of this subtree, appended in first-seen order.
    pub fn collect_leaves(&self, out: &mut Vec<char>) {
        match self {
            ComponentRef::Leaf(c) => {
                if !out.contains(c) {
                    out.push(*c);
                }
            }
            ComponentRef::Nested(_, children) => {
                for child in children {
                    child.collect_leaves(out);
                }
            }
        }
    }

    pub fn is_nested(&self) -> bool {
        matches!(self, ComponentRef::Nested(..))
    }
}

/// One row of the decomposition table.
///
/// `layout` is `None` for rows tagged "TBD" (unannotated); those rows are
/// kept so ids stay stable but are excluded from statistics and training.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompEntry {
    pub id: u64,
    pub hanzi: char,
    pub codepoint: u32,
    pub radicals: Option<Vec<char>>,
    pub layout: Option<Layout>,
    pub components: Vec<ComponentRef>,
    /// 1-based line number in the source file, for reporting.
    pub line: usize,
}

impl DecompEntry {
    pub fn is_annotated(&self) -> bool {
        self.layout.is_some()
    }

    /// Distinct leaf components of this entry, in first-seen order.
    pub fn leaf_components(&self) -> Vec<char> {
        let mut out = Vec::new();
        for comp in &self.components {
            comp.collect_leaves(&mut out);
        }
        out
    }

    /// True when any component is itself a composition.
    pub fn is_nested(&self) -> bool {
        self.components.iter().any(ComponentRef::is_nested)
    }

    /// The entry's whole decomposition as a single component tree.
    /// `None` for isolated or unannotated rows.
    pub fn signature(&self) -> Option<ComponentRef> {
        let layout = self.layout?;
        if layout.kind == LayoutKind::Nl00 {
            return None;
        }
        Some(ComponentRef::Nested(layout, self.components.clone()))
    }
}
