//! The printed right-hand case formulas against the transpose route.

use serde::Serialize;

use crate::action::{Context, Engine, GeneratorToken, ModuleElement, LEFT_CORRECTIONS, RIGHT_CORRECTIONS};
use crate::decorated::enumerate_decorated;
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct TransposeMismatch {
    pub token: GeneratorToken,
    pub input: String,
    pub printed: String,
    pub transpose: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransposeReport {
    pub context: Context,
    pub checked: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<TransposeMismatch>,
    /// Readings applied to the printed case formulas.
    pub left_corrections: Vec<String>,
    pub right_corrections: Vec<String>,
}

impl TransposeReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// `act_right_printed` against `act_right_by_transpose` on every basis element
/// and right token.
pub fn verify_transpose_duality(engine: &Engine, context: Context) -> Result<TransposeReport> {
    let mut checked = 0;
    let mut mismatches = 0;
    let mut first_mismatch = None;
    for t in GeneratorToken::all(context.m) {
        for x in enumerate_decorated(context.n, context.m, context.d) {
            let b = ModuleElement::basis(context, x.clone())?;
            let expected = engine.act_right_by_transpose(&b, &t)?;
            let printed = engine.act_right_printed(&b, &t);
            checked += 1;
            if !matches!(&printed, Ok(p) if *p == expected) {
                mismatches += 1;
                first_mismatch.get_or_insert_with(|| TransposeMismatch {
                    token: t,
                    input: x.to_string(),
                    printed: match &printed {
                        Ok(p) => p.to_string(),
                        Err(e) => format!("error: {e}"),
                    },
                    transpose: expected.to_string(),
                });
            }
        }
    }
    Ok(TransposeReport {
        context,
        checked,
        mismatches,
        first_mismatch,
        left_corrections: LEFT_CORRECTIONS.iter().map(|s| s.to_string()).collect(),
        right_corrections: RIGHT_CORRECTIONS.iter().map(|s| s.to_string()).collect(),
    })
}
