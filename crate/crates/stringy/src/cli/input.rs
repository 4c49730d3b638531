//! The structured input document: a JSON object describing a group (by
//! permutation generators, an explicit multiplication table, or matrix
//! generators), an optional representation (one matrix of expression
//! strings per generator), and optional labels. Catalog entries serialize
//! to this format and re-parse to the identical group and matrices.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, Permutation, Provenance};
use crate::matrix::CycMatrix;
use crate::reptheory::{matrix_group, RepError, Representation};

use super::expr::{parse_cyclotomic_expr, ExprError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{0}")]
    Document(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    /// Generators as cycle lists of 1-based points.
    Permutation { degree: usize, generators: Vec<Vec<Vec<u64>>> },
    /// Explicit multiplication table, identity at index 0; optional
    /// generator indices (defaults to every non-identity element).
    Table {
        table: Vec<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<u32>>,
    },
    /// Square matrices of cyclotomic expression strings.
    Matrix { generators: Vec<Vec<Vec<String>>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepresentationSpec {
    /// One matrix per group generator, entries in the expression grammar.
    pub matrices: Vec<Vec<Vec<String>>>,
    /// Declared dimension, needed only when there are no generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Labels {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputDocument {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Labels>,
}

/// A parsed and validated input: the group, a representation when one is
/// available (explicit, tautological for matrix groups, or the natural one
/// for permutation groups), and display labels.
pub struct LoadedInput {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub rep: Option<Arc<Representation>>,
    pub rep_label: String,
    pub gen_labels: Vec<String>,
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<CycMatrix, InputError> {
    let d = rows.len();
    let mut out = Vec::with_capacity(d);
    for row in rows {
        if row.len() != d {
            return Err(InputError::Document("matrix is not square".into()));
        }
        let mut parsed = Vec::with_capacity(d);
        for entry in row {
            parsed.push(parse_cyclotomic_expr(entry)?);
        }
        out.push(parsed);
    }
    Ok(CycMatrix::from_rows(out))
}

fn render_matrix(m: &CycMatrix) -> Vec<Vec<String>> {
    m.rows().map(|row| row.iter().map(|e| e.to_string()).collect()).collect()
}

pub fn build(doc: &InputDocument, cap: usize) -> Result<LoadedInput, InputError> {
    let labels = doc.labels.clone().unwrap_or_default();
    let rep_label = labels
        .representation
        .clone()
        .unwrap_or_else(|| "V".to_string());

    let (group, tautological) = match &doc.group {
        GroupSpec::Permutation { degree, generators } => {
            let mut perms = Vec::with_capacity(generators.len());
            for cycles in generators {
                let zero_based: Result<Vec<Vec<u32>>, InputError> = cycles
                    .iter()
                    .map(|cycle| {
                        cycle
                            .iter()
                            .map(|&p| {
                                if p == 0 || p as usize > *degree {
                                    Err(InputError::Document(format!(
                                        "cycle point {p} out of range for degree {degree}"
                                    )))
                                } else {
                                    Ok((p - 1) as u32)
                                }
                            })
                            .collect()
                    })
                    .collect();
                perms.push(Permutation::from_cycles(*degree, &zero_based?)?);
            }
            (FiniteGroup::from_permutations(perms, cap)?, None)
        }
        GroupSpec::Table { table, generators } => {
            (FiniteGroup::from_table(table.clone(), generators.clone())?, None)
        }
        GroupSpec::Matrix { generators } => {
            if generators.is_empty() {
                return Err(InputError::Document(
                    "matrix group needs at least one generator".into(),
                ));
            }
            let mats: Result<Vec<CycMatrix>, InputError> =
                generators.iter().map(|m| parse_matrix(m)).collect();
            let (group, rep) = matrix_group(mats?, cap, rep_label.clone())?;
            (group, Some(rep))
        }
    };

    let gen_labels = match labels.generators {
        Some(given) => {
            if given.len() != group.generators().len() {
                return Err(InputError::Document(format!(
                    "expected {} generator labels, got {}",
                    group.generators().len(),
                    given.len()
                )));
            }
            for label in &given {
                let mut chars = label.chars();
                let head_ok = chars
                    .next()
                    .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
                if !head_ok || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(InputError::Document(format!(
                        "generator label {label:?} is not a word ([A-Za-z_][A-Za-z0-9_]*)"
                    )));
                }
            }
            given
        }
        None => (1..=group.generators().len()).map(|i| format!("g{i}")).collect(),
    };

    let rep = match &doc.representation {
        Some(spec) => {
            if spec.matrices.len() != group.generators().len() {
                return Err(InputError::Document(format!(
                    "representation must give {} matrices, one per generator, got {}",
                    group.generators().len(),
                    spec.matrices.len()
                )));
            }
            if spec.matrices.is_empty() {
                let dim = spec.dimension.unwrap_or(0);
                Some(Arc::new(Representation::trivial_of_dim(
                    group.clone(),
                    dim,
                    rep_label.clone(),
                )?))
            } else {
                let mats: Result<Vec<CycMatrix>, InputError> =
                    spec.matrices.iter().map(|m| parse_matrix(m)).collect();
                Some(Arc::new(Representation::build(
                    group.clone(),
                    mats?,
                    rep_label.clone(),
                )?))
            }
        }
        None => match tautological {
            Some(rep) => Some(Arc::new(rep)),
            None => match group.provenance() {
                Provenance::PermutationImages { .. } => Some(Arc::new(
                    Representation::permutation_natural(group.clone())?,
                )),
                _ => None,
            },
        },
    };
    let rep_label = rep.as_ref().map(|r| r.label().to_string()).unwrap_or(rep_label);

    Ok(LoadedInput {
        name: labels.name.unwrap_or_else(|| "input".to_string()),
        group,
        rep,
        rep_label,
        gen_labels,
    })
}

/// Serializes a group and representation back to the input format. For a
/// matrix-provenance group the generator matrices of `group_source` (its
/// tautological representation) describe the group itself.
pub fn document_for(
    group: &Arc<FiniteGroup>,
    group_source: Option<&Representation>,
    rep: &Representation,
    gen_labels: &[String],
    name: &str,
) -> Result<InputDocument, InputError> {
    let group_spec = match group.provenance() {
        Provenance::PermutationImages { degree } => {
            let images = group.perm_images().expect("permutation provenance");
            let generators = group
                .generators()
                .iter()
                .map(|&g| {
                    images[g as usize]
                        .cycles()
                        .into_iter()
                        .map(|c| c.into_iter().map(|p| (p + 1) as u64).collect())
                        .collect()
                })
                .collect();
            GroupSpec::Permutation { degree: *degree, generators }
        }
        Provenance::ExplicitTable => {
            let n = group.order();
            let table = (0..n)
                .map(|a| (0..n).map(|b| group.mul(a as u32, b as u32)).collect())
                .collect();
            GroupSpec::Table { table, generators: Some(group.generators().to_vec()) }
        }
        Provenance::MatrixClosure { .. } => {
            let source = group_source.ok_or_else(|| {
                InputError::Document(
                    "matrix-provenance group needs its tautological representation".into(),
                )
            })?;
            let generators = group
                .generators()
                .iter()
                .map(|&g| render_matrix(source.matrix(g)))
                .collect();
            GroupSpec::Matrix { generators }
        }
    };
    let representation = RepresentationSpec {
        matrices: group
            .generators()
            .iter()
            .map(|&g| render_matrix(rep.matrix(g)))
            .collect(),
        dimension: if group.generators().is_empty() { Some(rep.dim()) } else { None },
    };
    Ok(InputDocument {
        group: group_spec,
        representation: Some(representation),
        labels: Some(Labels {
            name: Some(name.to_string()),
            generators: Some(gen_labels.to_vec()),
            representation: Some(rep.label().to_string()),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CLOSURE_CAP;

    #[test]
    fn permutation_document_builds_s3_with_natural_rep() {
        let doc: InputDocument = serde_json::from_str(
            r#"{
                "group": {"type": "permutation", "degree": 3,
                          "generators": [[[1,2]], [[1,2,3]]]},
                "labels": {"name": "S3", "generators": ["a", "b"]}
            }"#,
        )
        .unwrap();
        let loaded = build(&doc, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(loaded.group.order(), 6);
        assert_eq!(loaded.gen_labels, vec!["a", "b"]);
        let rep = loaded.rep.unwrap();
        assert_eq!(rep.dim(), 3);
    }

    #[test]
    fn matrix_document_builds_group_and_tautological_rep() {
        let doc: InputDocument = serde_json::from_str(
            r#"{
                "group": {"type": "matrix",
                          "generators": [[["E(4)", "0"], ["0", "E(4)^-1"]],
                                          [["0", "1"], ["-1", "0"]]]},
                "labels": {"generators": ["g", "h"], "representation": "Q"}
            }"#,
        )
        .unwrap();
        let loaded = build(&doc, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(loaded.group.order(), 8);
        assert_eq!(loaded.rep.unwrap().dim(), 2);
    }

    #[test]
    fn table_document_round_trips() {
        let doc: InputDocument = serde_json::from_str(
            r#"{"group": {"type": "table", "table": [[0,1],[1,0]]}}"#,
        )
        .unwrap();
        let loaded = build(&doc, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(loaded.group.order(), 2);
        // Table provenance without an explicit representation has none.
        assert!(loaded.rep.is_none());
    }

    #[test]
    fn explicit_representation_overrides_natural() {
        let doc: InputDocument = serde_json::from_str(
            r#"{
                "group": {"type": "permutation", "degree": 2, "generators": [[[1,2]]]},
                "representation": {"matrices": [[["-1"]]]},
                "labels": {"representation": "sign"}
            }"#,
        )
        .unwrap();
        let loaded = build(&doc, DEFAULT_CLOSURE_CAP).unwrap();
        let rep = loaded.rep.unwrap();
        assert_eq!(rep.dim(), 1);
        assert_eq!(rep.label(), "sign");
    }

    #[test]
    fn bad_documents_are_rejected() {
        let bad_cycle: InputDocument = serde_json::from_str(
            r#"{"group": {"type": "permutation", "degree": 2, "generators": [[[1,5]]]}}"#,
        )
        .unwrap();
        assert!(build(&bad_cycle, DEFAULT_CLOSURE_CAP).is_err());

        let bad_matrix_count: InputDocument = serde_json::from_str(
            r#"{
                "group": {"type": "permutation", "degree": 2, "generators": [[[1,2]]]},
                "representation": {"matrices": []}
            }"#,
        )
        .unwrap();
        assert!(build(&bad_matrix_count, DEFAULT_CLOSURE_CAP).is_err());
    }

    #[test]
    fn serialization_reparses_identically() {
        let doc: InputDocument = serde_json::from_str(
            r#"{
                "group": {"type": "permutation", "degree": 4,
                          "generators": [[[1,2,3,4]]]},
                "representation": {"matrices": [[["E(4)"]]]},
                "labels": {"name": "C4", "generators": ["s"], "representation": "i"}
            }"#,
        )
        .unwrap();
        let loaded = build(&doc, DEFAULT_CLOSURE_CAP).unwrap();
        let rep = loaded.rep.clone().unwrap();
        let dumped =
            document_for(&loaded.group, None, &rep, &loaded.gen_labels, "C4").unwrap();
        let reloaded = build(&dumped, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(reloaded.group.order(), loaded.group.order());
        for a in 0..4u32 {
            for b in 0..4u32 {
                assert_eq!(reloaded.group.mul(a, b), loaded.group.mul(a, b));
            }
        }
        let rep2 = reloaded.rep.unwrap();
        for g in 0..4u32 {
            assert_eq!(rep2.matrix(g), rep.matrix(g));
        }
    }
}
