//! Composition plans: ordered pairwise steps that assemble a character.
//!
//! Three-component layouts are rewritten as two pairwise steps so a single
//! two-component model per layout family can synthesize them: NL04 becomes
//! two left-right (NL01) steps, NL05 two top-bottom (NL02) steps.

use super::{ComponentRef, DecompEntry, Layout, LayoutKind};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("entry U+{0:04X} has an isolated (NL00) layout and cannot be composed")]
    Isolated(u32),
    #[error("entry U+{0:04X} is unannotated (TBD) and cannot be composed")]
    Unannotated(u32),
    #[error("entry U+{codepoint:04X}: layout {layout} expects {expected} components, found {found}")]
    Arity { codepoint: u32, layout: Layout, expected: usize, found: usize },
}

/// A step operand: a designed leaf glyph or the output of an earlier step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanOperand {
    Leaf(char),
    Step(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanStep {
    pub layout: Layout,
    pub operands: Vec<PlanOperand>,
}

/// Topologically ordered steps; the final step produces the target character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionPlan {
    pub target: char,
    pub steps: Vec<PlanStep>,
}

impl CompositionPlan {
    /// Leaf characters in left-to-right plan order (with repeats).
    pub fn leaves(&self) -> Vec<char> {
        let mut out = Vec::new();
        for step in &self.steps {
            for op in &step.operands {
                if let PlanOperand::Leaf(c) = op {
                    out.push(*c);
                }
            }
        }
        out
    }

    /// Distinct leaf characters, first-seen order.
    pub fn distinct_leaves(&self) -> Vec<char> {
        let mut out = Vec::new();
        for c in self.leaves() {
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }
}

/// Expand an entry's component tree into pairwise steps by post-order
/// traversal.
pub fn expand_nested(entry: &DecompEntry) -> Result<CompositionPlan, PlanError> {
    let layout = entry.layout.ok_or(PlanError::Unannotated(entry.codepoint))?;
    if layout.kind == LayoutKind::Nl00 {
        return Err(PlanError::Isolated(entry.codepoint));
    }
    if entry.components.len() != layout.arity() {
        return Err(PlanError::Arity {
            codepoint: entry.codepoint,
            layout,
            expected: layout.arity(),
            found: entry.components.len(),
        });
    }

    let mut steps = Vec::new();
    let operands: Vec<PlanOperand> = entry
        .components
        .iter()
        .map(|c| expand_ref(c, &mut steps))
        .collect();
    emit_node(layout, operands, &mut steps);
    Ok(CompositionPlan { target: entry.hanzi, steps })
}

fn expand_ref(node: &ComponentRef, steps: &mut Vec<PlanStep>) -> PlanOperand {
    match node {
        ComponentRef::Leaf(c) => PlanOperand::Leaf(*c),
        ComponentRef::Nested(layout, children) => {
            let operands: Vec<PlanOperand> =
                children.iter().map(|c| expand_ref(c, steps)).collect();
            emit_node(*layout, operands, steps)
        }
    }
}

/// Emit the step(s) realizing one tree node and return its result operand.
fn emit_node(layout: Layout, operands: Vec<PlanOperand>, steps: &mut Vec<PlanStep>) -> PlanOperand {
    match operands.len() {
        2 => {
            steps.push(PlanStep { layout, operands });
            PlanOperand::Step(steps.len() - 1)
        }
        3 => {
            // Pairwise rewrite with the matching two-component layout.
            let paired = match layout.kind {
                LayoutKind::Nl04 => Layout::plain(LayoutKind::Nl01),
                LayoutKind::Nl05 => Layout::plain(LayoutKind::Nl02),
                other => unreachable!("3 operands under {other}"),
            };
            let mut it = operands.into_iter();
            let (a, b, c) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
            steps.push(PlanStep { layout: paired, operands: vec![a, b] });
            let mid = PlanOperand::Step(steps.len() - 1);
            steps.push(PlanStep { layout: paired, operands: vec![mid, c] });
            PlanOperand::Step(steps.len() - 1)
        }
        n => unreachable!("component node with arity {n}"),
    }
}
