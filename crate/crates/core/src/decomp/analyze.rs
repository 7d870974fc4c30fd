//! Table validation and dataset statistics.

use super::{ComponentRef, DecompEntry, Layout, LayoutKind};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    DuplicateId { other_line: usize },
    CodepointMismatch { expected: u32 },
    ArityMismatch { layout: Layout, expected: usize, found: usize },
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::DuplicateId { other_line } => {
                write!(f, "duplicate id (also used on line {other_line})")
            }
            ViolationKind::CodepointMismatch { expected } => {
                write!(f, "codepoint does not match hanzi (expected U+{expected:04X})")
            }
            ViolationKind::ArityMismatch { layout, expected, found } => {
                write!(f, "layout {layout} expects {expected} components, found {found}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub entry_id: u64,
    pub line: usize,
    pub kind: ViolationKind,
}

/// Outcome of [`validate`]. Violations are data, not errors; external
/// components (leaves that are not themselves table entries) are listed for
/// reference and do not count against cleanliness.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub external_components: Vec<char>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Line-oriented human-readable form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            out.push_str(&format!("entry {} line {}: {}\n", v.entry_id, v.line, v.kind));
        }
        if !self.external_components.is_empty() {
            let list: String = self.external_components.iter().collect();
            out.push_str(&format!("external components ({}): {}\n", self.external_components.len(), list));
        }
        if self.violations.is_empty() {
            out.push_str("no violations\n");
        }
        out
    }
}

/// Check every entry invariant and cross-reference leaf components.
pub fn validate(entries: &[DecompEntry]) -> ValidationReport {
    let mut report = ValidationReport::default();

    let mut first_line_by_id: HashMap<u64, usize> = HashMap::new();
    for entry in entries {
        if let Some(&other_line) = first_line_by_id.get(&entry.id) {
            report.violations.push(Violation {
                entry_id: entry.id,
                line: entry.line,
                kind: ViolationKind::DuplicateId { other_line },
            });
            // Name both lines: flag the first occurrence once as well.
            if !report.violations.iter().any(|v| {
                v.line == other_line && matches!(v.kind, ViolationKind::DuplicateId { .. })
            }) {
                report.violations.push(Violation {
                    entry_id: entry.id,
                    line: other_line,
                    kind: ViolationKind::DuplicateId { other_line: entry.line },
                });
            }
        } else {
            first_line_by_id.insert(entry.id, entry.line);
        }

        if entry.hanzi as u32 != entry.codepoint {
            report.violations.push(Violation {
                entry_id: entry.id,
                line: entry.line,
                kind: ViolationKind::CodepointMismatch { expected: entry.hanzi as u32 },
            });
        }

        if let Some(layout) = entry.layout {
            let expected = layout.arity();
            if entry.components.len() != expected {
                report.violations.push(Violation {
                    entry_id: entry.id,
                    line: entry.line,
                    kind: ViolationKind::ArityMismatch {
                        layout,
                        expected,
                        found: entry.components.len(),
                    },
                });
            }
        }
    }

    let known: HashSet<char> = entries.iter().map(|e| e.hanzi).collect();
    let mut external = BTreeSet::new();
    for entry in entries {
        for leaf in entry.leaf_components() {
            if !known.contains(&leaf) {
                external.insert(leaf);
            }
        }
    }
    report.external_components = external.into_iter().collect();
    report
}

/// Per-layout counts. Unannotated rows are tallied separately and excluded
/// from the per-layout maps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LayoutStats {
    pub by_layout: BTreeMap<LayoutKind, usize>,
    pub nl03_variations: BTreeMap<u8, usize>,
    pub nested_by_layout: BTreeMap<LayoutKind, usize>,
    pub tbd: usize,
    pub total: usize,
}

pub fn layout_stats(entries: &[DecompEntry]) -> LayoutStats {
    let mut stats = LayoutStats { total: entries.len(), ..Default::default() };
    for entry in entries {
        match entry.layout {
            None => stats.tbd += 1,
            Some(layout) => {
                *stats.by_layout.entry(layout.kind).or_default() += 1;
                if let Some(v) = layout.variation {
                    *stats.nl03_variations.entry(v).or_default() += 1;
                }
                if entry.is_nested() {
                    *stats.nested_by_layout.entry(layout.kind).or_default() += 1;
                }
            }
        }
    }
    stats
}

/// Ranked component usage: each entry counts at most once per distinct leaf.
/// Descending by count, ties broken by ascending codepoint.
pub fn component_frequency(entries: &[DecompEntry]) -> Vec<(char, usize)> {
    let mut counts: HashMap<char, usize> = HashMap::new();
    for entry in entries.iter().filter(|e| e.is_annotated()) {
        for leaf in entry.leaf_components() {
            *counts.entry(leaf).or_default() += 1;
        }
    }
    let mut ranked: Vec<(char, usize)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}

/// How many characters become composable as designed components are added in
/// descending frequency order. Point `k` of the result pairs the pool size
/// `k` with the number of composable characters.
///
/// An operand is available when it is a pooled leaf character, or a nested
/// composition whose equivalent character (an entry with the identical
/// decomposition) is pooled. In recursive mode every newly composable
/// character joins the pool and the scan repeats until a fixed point.
pub fn coverage_curve(entries: &[DecompEntry], recursive: bool) -> Vec<(usize, usize)> {
    let ranked = component_frequency(entries);
    let targets: Vec<&DecompEntry> = entries
        .iter()
        .filter(|e| {
            e.layout
                .map(|l| l.kind != LayoutKind::Nl00 && !e.components.is_empty())
                .unwrap_or(false)
        })
        .collect();

    // Character equivalent of each distinct nested signature.
    let mut by_signature: HashMap<ComponentRef, char> = HashMap::new();
    for t in &targets {
        if let Some(sig) = t.signature() {
            by_signature.entry(sig).or_insert(t.hanzi);
        }
    }

    let mut curve = Vec::with_capacity(ranked.len() + 1);
    for n in 0..=ranked.len() {
        let mut pool: HashSet<char> = ranked[..n].iter().map(|&(c, _)| c).collect();
        let composable = if recursive {
            let mut done: HashSet<u64> = HashSet::new();
            loop {
                let mut grew = false;
                for t in &targets {
                    if done.contains(&t.id) {
                        continue;
                    }
                    if entry_composable(t, &pool, &by_signature) {
                        done.insert(t.id);
                        grew |= pool.insert(t.hanzi);
                    }
                }
                if !grew {
                    break;
                }
            }
            done.len()
        } else {
            targets
                .iter()
                .filter(|t| entry_composable(t, &pool, &by_signature))
                .count()
        };
        curve.push((n, composable));
    }
    curve
}

fn entry_composable(
    entry: &DecompEntry,
    pool: &HashSet<char>,
    by_signature: &HashMap<ComponentRef, char>,
) -> bool {
    entry
        .components
        .iter()
        .all(|c| operand_available(c, pool, by_signature))
}

fn operand_available(
    operand: &ComponentRef,
    pool: &HashSet<char>,
    by_signature: &HashMap<ComponentRef, char>,
) -> bool {
    match operand {
        ComponentRef::Leaf(c) => pool.contains(c),
        ComponentRef::Nested(..) => by_signature
            .get(operand)
            .map(|c| pool.contains(c))
            .unwrap_or(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::parse_table;

    fn table(text: &str) -> Vec<DecompEntry> {
        parse_table(text).unwrap()
    }

    #[test]
    fn duplicate_id_names_both_lines() {
        let entries = table("7\tA\tU+0041\t\tNL00\t\t\t\n7\tB\tU+0042\t\tNL00\t\t\t");
        let report = validate(&entries);
        let dup: Vec<_> = report
            .violations
            .iter()
            .filter(|v| matches!(v.kind, ViolationKind::DuplicateId { .. }))
            .collect();
        assert_eq!(dup.len(), 2);
        let lines: Vec<usize> = dup.iter().map(|v| v.line).collect();
        assert!(lines.contains(&1) && lines.contains(&2));
    }

    #[test]
    fn arity_violation_for_short_nl04() {
        let entries = table("1\tX\tU+0058\t\tNL04\ta\tb\t");
        let report = validate(&entries);
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.violations[0].kind,
            ViolationKind::ArityMismatch { expected: 3, found: 2, .. }
        ));
    }

    #[test]
    fn codepoint_mismatch_flagged() {
        let entries = table("1\tA\tU+0042\t\tNL00\t\t\t");
        let report = validate(&entries);
        assert!(matches!(
            report.violations[0].kind,
            ViolationKind::CodepointMismatch { expected: 0x41 }
        ));
    }

    #[test]
    fn consistent_table_yields_empty_report() {
        let entries = table(
            "1\t媒\tU+5A92\t女\tNL01\t女\t某\t\n\
             2\t一\tU+4E00\t\tNL00\t\t\t\n\
             3\tX\tU+0058\t\tNL02\t(NL01 A B)\tC\t",
        );
        let report = validate(&entries);
        assert!(report.is_clean(), "{:?}", report.violations);
        // 女, 某, A, B, C are not entries themselves.
        assert_eq!(report.external_components.len(), 5);
    }

    #[test]
    fn layout_stats_counts() {
        let entries = table(
            "1\tA\tU+0041\t\tNL01\tx\ty\t\n\
             2\tB\tU+0042\t\tNL01\tx\tz\t\n\
             3\tC\tU+0043\t\tNL02\tx\ty\t",
        );
        let stats = layout_stats(&entries);
        assert_eq!(stats.by_layout[&LayoutKind::Nl01], 2);
        assert_eq!(stats.by_layout[&LayoutKind::Nl02], 1);
        assert_eq!(stats.by_layout.values().sum::<usize>() + stats.tbd, stats.total);
    }

    #[test]
    fn nl03_variation_counts() {
        let entries = table("1\tA\tU+0041\t\tNL03-5\tx\ty\t");
        let stats = layout_stats(&entries);
        assert_eq!(stats.nl03_variations[&5], 1);
    }

    #[test]
    fn nested_counted_per_layout() {
        let entries = table("1\tA\tU+0041\t\tNL02\t(NL01 x y)\tz\t");
        let stats = layout_stats(&entries);
        assert_eq!(stats.nested_by_layout[&LayoutKind::Nl02], 1);
        assert!(stats.nested_by_layout.get(&LayoutKind::Nl01).is_none());
    }

    #[test]
    fn tbd_rows_excluded_from_layout_maps() {
        let entries = table("1\tA\tU+0041\t\tTBD\t\t\t\n2\tB\tU+0042\t\tNL00\t\t\t");
        let stats = layout_stats(&entries);
        assert_eq!(stats.tbd, 1);
        assert_eq!(stats.by_layout[&LayoutKind::Nl00], 1);
        assert_eq!(stats.total, 2);
    }

    #[test]
    fn frequency_counts_entries_once_per_component() {
        // AB and AC: A twice, B once, C once.
        let entries = table(
            "1\tP\tU+0050\t\tNL01\tA\tB\t\n\
             2\tQ\tU+0051\t\tNL01\tA\tC\t",
        );
        let freq = component_frequency(&entries);
        assert_eq!(freq, vec![('A', 2), ('B', 1), ('C', 1)]);
    }

    #[test]
    fn frequency_dedupes_within_nested_entry() {
        let entries = table("1\tP\tU+0050\t\tNL02\t(NL01 A B)\tC\t");
        let freq = component_frequency(&entries);
        assert_eq!(freq, vec![('A', 1), ('B', 1), ('C', 1)]);
    }

    #[test]
    fn frequency_ties_break_by_codepoint() {
        let entries = table("1\tP\tU+0050\t\tNL01\tB\tA\t");
        let freq = component_frequency(&entries);
        assert_eq!(freq, vec![('A', 1), ('B', 1)]);
    }

    // Coverage fixture: chars {AB, AA, nested (NL02 (NL01 A B) A)} over
    // components {A, B}.
    fn coverage_fixture() -> Vec<DecompEntry> {
        table(
            "1\tβ\tU+03B2\t\tNL01\tA\tB\t\n\
             2\tγ\tU+03B3\t\tNL01\tA\tA\t\n\
             3\tδ\tU+03B4\t\tNL02\t(NL01 A B)\tA\t",
        )
    }

    #[test]
    fn coverage_non_recursive_by_hand_enumeration() {
        // Pool {A}: only AA. Pool {A,B}: AB and AA; the nested char still
        // needs the intermediate as a designed component.
        let curve = coverage_curve(&coverage_fixture(), false);
        assert_eq!(curve, vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn coverage_recursive_fixed_point() {
        // Once AB is composable its character joins the pool, which unlocks
        // the nested character.
        let curve = coverage_curve(&coverage_fixture(), true);
        assert_eq!(curve, vec![(0, 0), (1, 1), (2, 3)]);
    }

    #[test]
    fn coverage_zero_components_zero_chars() {
        let curve = coverage_curve(&coverage_fixture(), true);
        assert_eq!(curve[0], (0, 0));
    }

    #[test]
    fn recursive_dominates_non_recursive() {
        let entries = table(
            "1\tβ\tU+03B2\t\tNL01\tA\tB\t\n\
             2\tγ\tU+03B3\t\tNL02\tβ\tC\t\n\
             3\tδ\tU+03B4\t\tNL01\tC\tD\t",
        );
        let flat = coverage_curve(&entries, false);
        let rec = coverage_curve(&entries, true);
        assert_eq!(flat.len(), rec.len());
        for (f, r) in flat.iter().zip(&rec) {
            assert!(f.1 <= r.1, "non-recursive exceeded recursive at {f:?} vs {r:?}");
        }
    }

    #[test]
    fn coverage_monotone_non_decreasing() {
        for recursive in [false, true] {
            let curve = coverage_curve(&coverage_fixture(), recursive);
            for w in curve.windows(2) {
                assert!(w[0].1 <= w[1].1);
            }
        }
    }

    #[test]
    fn recursive_uses_character_leaves() {
        // γ uses β (a composable character) as a direct leaf.
        let entries = table(
            "1\tβ\tU+03B2\t\tNL01\tA\tB\t\n\
             2\tγ\tU+03B3\t\tNL02\tβ\tA\t",
        );
        let flat = coverage_curve(&entries, false);
        let rec = coverage_curve(&entries, true);
        // Components ranked: A(2), B(1), β(1) -> β sorts after B by codepoint.
        assert_eq!(flat.last().unwrap().1, 2);
        assert_eq!(rec[2], (2, 2), "β composable then feeds γ");
    }
}
