//! The built-in catalog: the worked quaternion example with its five
//! irreducibles, the small cyclic and dihedral fixtures every identity
//! check runs over, the SL variants, and the Q8 x C3 product used by the
//! associativity and Kunneth suites.

use std::sync::Arc;

use crate::arith::Cyclotomic;
use crate::group::{direct_product, FiniteGroup, Permutation, DEFAULT_CLOSURE_CAP};
use crate::matrix::CycMatrix;
use crate::reptheory::{matrix_group, Representation};

pub struct CatalogEntry {
    pub name: &'static str,
    pub group: Arc<FiniteGroup>,
    pub gen_labels: Vec<String>,
    /// Named representations in deterministic order.
    pub reps: Vec<(String, Arc<Representation>)>,
    pub default_rep: String,
    /// Name of the tautological representation for matrix-closure groups.
    pub tautological: Option<String>,
}

impl CatalogEntry {
    pub fn rep(&self, name: &str) -> Option<&Arc<Representation>> {
        self.reps.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn default_rep(&self) -> &Arc<Representation> {
        self.rep(&self.default_rep).expect("default representation exists")
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn scalar(value: Cyclotomic) -> CycMatrix {
    CycMatrix::from_rows(vec![vec![value]])
}

fn diag2(a: Cyclotomic, b: Cyclotomic) -> CycMatrix {
    CycMatrix::from_rows(vec![
        vec![a, Cyclotomic::zero(1)],
        vec![Cyclotomic::zero(1), b],
    ])
}

fn int2(rows: [[i64; 2]; 2]) -> CycMatrix {
    CycMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Cyclotomic::from_integer(v)).collect())
            .collect(),
    )
}

fn cyclic_group(n: usize) -> Arc<FiniteGroup> {
    FiniteGroup::from_permutations(
        vec![Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap()],
        DEFAULT_CLOSURE_CAP,
    )
    .expect("cyclic closure")
}

fn perm_group(degree: usize, cycles: &[&[&[u32]]]) -> Arc<FiniteGroup> {
    let gens = cycles
        .iter()
        .map(|gen| {
            let c: Vec<Vec<u32>> =
                gen.iter().map(|cycle| cycle.iter().map(|p| p - 1).collect()).collect();
            Permutation::from_cycles(degree, &c).unwrap()
        })
        .collect();
    FiniteGroup::from_permutations(gens, DEFAULT_CLOSURE_CAP).expect("permutation closure")
}

fn build_rep(
    group: &Arc<FiniteGroup>,
    mats: Vec<CycMatrix>,
    label: &str,
) -> (String, Arc<Representation>) {
    (
        label.to_string(),
        Arc::new(Representation::build(group.clone(), mats, label).expect("catalog rep")),
    )
}

fn quaternion_entry() -> CatalogEntry {
    let i = Cyclotomic::root_of_unity(4, 1);
    let g = diag2(i.clone(), i.conjugate());
    let h = int2([[0, 1], [-1, 0]]);
    let (group, q) = matrix_group(vec![g, h], DEFAULT_CLOSURE_CAP, "Q").expect("Q8 closure");
    let one = || scalar(Cyclotomic::one());
    let minus = || scalar(Cyclotomic::from_integer(-1));
    let reps = vec![
        build_rep(&group, vec![one(), one()], "1"),
        build_rep(&group, vec![minus(), one()], "G"),
        build_rep(&group, vec![one(), minus()], "H"),
        build_rep(&group, vec![minus(), minus()], "GH"),
        ("Q".to_string(), Arc::new(q)),
    ];
    CatalogEntry {
        name: "Q8",
        group,
        gen_labels: labels(&["g", "h"]),
        reps,
        default_rep: "Q".into(),
        tautological: Some("Q".into()),
    }
}

fn q8_times_c3_entry() -> CatalogEntry {
    let q8 = quaternion_entry();
    let c3 = cyclic_group(3);
    let zeta = Arc::new(
        Representation::build(
            c3.clone(),
            vec![scalar(Cyclotomic::root_of_unity(3, 1))],
            "zeta",
        )
        .unwrap(),
    );
    let product = direct_product(&q8.group, &c3, DEFAULT_CLOSURE_CAP).expect("Q8 x C3");
    let ext = Arc::new(
        Representation::external_sum(q8.rep("Q").unwrap(), &zeta, &product)
            .expect("external sum"),
    );
    CatalogEntry {
        name: "Q8xC3",
        group: product.group,
        gen_labels: labels(&["g", "h", "s"]),
        reps: vec![("Qzeta".to_string(), ext)],
        default_rep: "Qzeta".into(),
        tautological: None,
    }
}

/// All catalog entries, in deterministic order.
pub fn entries() -> Vec<CatalogEntry> {
    let trivial_group =
        FiniteGroup::from_permutations(vec![], DEFAULT_CLOSURE_CAP).unwrap();
    let trivial = CatalogEntry {
        name: "trivial",
        reps: vec![(
            "triv".to_string(),
            Arc::new(
                Representation::trivial_of_dim(trivial_group.clone(), 1, "triv").unwrap(),
            ),
        )],
        group: trivial_group,
        gen_labels: vec![],
        default_rep: "triv".into(),
        tautological: None,
    };

    let c2 = cyclic_group(2);
    let c2_entry = CatalogEntry {
        name: "C2",
        reps: vec![build_rep(&c2, vec![scalar(Cyclotomic::from_integer(-1))], "sign")],
        group: c2,
        gen_labels: labels(&["s"]),
        default_rep: "sign".into(),
        tautological: None,
    };

    let c3 = cyclic_group(3);
    let c3_entry = CatalogEntry {
        name: "C3",
        reps: vec![build_rep(&c3, vec![scalar(Cyclotomic::root_of_unity(3, 1))], "zeta")],
        group: c3,
        gen_labels: labels(&["s"]),
        default_rep: "zeta".into(),
        tautological: None,
    };

    let c4 = cyclic_group(4);
    let c4_entry = CatalogEntry {
        name: "C4",
        reps: vec![build_rep(&c4, vec![scalar(Cyclotomic::root_of_unity(4, 1))], "i")],
        group: c4,
        gen_labels: labels(&["s"]),
        default_rep: "i".into(),
        tautological: None,
    };

    let c6 = cyclic_group(6);
    let c6_entry = CatalogEntry {
        name: "C6",
        reps: vec![build_rep(&c6, vec![scalar(Cyclotomic::root_of_unity(6, 1))], "zeta")],
        group: c6,
        gen_labels: labels(&["s"]),
        default_rep: "zeta".into(),
        tautological: None,
    };

    let klein = perm_group(4, &[&[&[1, 2]], &[&[3, 4]]]);
    let klein_entry = CatalogEntry {
        name: "C2xC2",
        reps: vec![build_rep(
            &klein,
            vec![
                diag2(Cyclotomic::from_integer(-1), Cyclotomic::one()),
                diag2(Cyclotomic::one(), Cyclotomic::from_integer(-1)),
            ],
            "diag",
        )],
        group: klein,
        gen_labels: labels(&["a", "b"]),
        default_rep: "diag".into(),
        tautological: None,
    };

    let s3 = perm_group(3, &[&[&[1, 2]], &[&[1, 2, 3]]]);
    let s3_entry = CatalogEntry {
        name: "S3",
        reps: vec![(
            "perm".to_string(),
            Arc::new(Representation::permutation_natural(s3.clone()).unwrap()),
        )],
        group: s3,
        gen_labels: labels(&["a", "b"]),
        default_rep: "perm".into(),
        tautological: None,
    };

    let d4 = perm_group(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
    let d4_entry = CatalogEntry {
        name: "D4",
        reps: vec![
            build_rep(&d4, vec![int2([[0, -1], [1, 0]]), int2([[-1, 0], [0, 1]])], "std2"),
            (
                "perm".to_string(),
                Arc::new(Representation::permutation_natural(d4.clone()).unwrap()),
            ),
        ],
        group: d4,
        gen_labels: labels(&["r", "s"]),
        default_rep: "std2".into(),
        tautological: None,
    };

    let a4 = perm_group(4, &[&[&[1, 2, 3]], &[&[2, 3, 4]]]);
    let a4_entry = CatalogEntry {
        name: "A4",
        reps: vec![(
            "perm".to_string(),
            Arc::new(Representation::permutation_natural(a4.clone()).unwrap()),
        )],
        group: a4,
        gen_labels: labels(&["a", "b"]),
        default_rep: "perm".into(),
        tautological: None,
    };

    let c2_sl = cyclic_group(2);
    let c2_sl_entry = CatalogEntry {
        name: "C2-SL",
        reps: vec![build_rep(
            &c2_sl,
            vec![diag2(Cyclotomic::from_integer(-1), Cyclotomic::from_integer(-1))],
            "V",
        )],
        group: c2_sl,
        gen_labels: labels(&["s"]),
        default_rep: "V".into(),
        tautological: None,
    };

    let c3_sl = cyclic_group(3);
    let c3_sl_entry = CatalogEntry {
        name: "C3-SL",
        reps: vec![build_rep(
            &c3_sl,
            vec![diag2(
                Cyclotomic::root_of_unity(3, 1),
                Cyclotomic::root_of_unity(3, 2),
            )],
            "V",
        )],
        group: c3_sl,
        gen_labels: labels(&["s"]),
        default_rep: "V".into(),
        tautological: None,
    };

    vec![
        trivial,
        c2_entry,
        c3_entry,
        c4_entry,
        c6_entry,
        klein_entry,
        s3_entry,
        d4_entry,
        quaternion_entry(),
        a4_entry,
        c2_sl_entry,
        c3_sl_entry,
        q8_times_c3_entry(),
    ]
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}
