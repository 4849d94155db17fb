//! The acceptance gate for the library: eleven numbered checks, each
//! printing one `[acceptance] criterion N (<name>): pass` line (visible
//! under `--nocapture`). Tolerances are pinned here as constants so a
//! regression shows up as a diff in this file, not as a silently loosened
//! bound.

use quatconv::dsl::{self, Expr, Tool, Type, Value};
use quatconv::kinematics::{integrate, AngularVelocity, Frame};
use quatconv::linalg::{frobenius_diff, mat_max_abs_diff, transpose, vmax_abs_diff, vscale};
use quatconv::quat::{self, log_quat};
use quatconv::rotvec::{
    rotvec_to_matrix, rotvec_to_quat, table2_row, ConventionFactors, Table2Option, Usage,
};
use quatconv::so3::{euler_rodrigues, quat_to_matrix, rotate};
use quatconv::dataset::{migrate_dataset, read_dataset, write_dataset, DatasetHeader, QuatDataset};
use quatconv::detect::{
    classify, MatrixToQuatSample, ProbeTable, ProductSample, QuatToMatrixSample,
};
use quatconv::{
    ComponentOrder, MatrixMap, Multiplication, QmConvention, Quaternion, RotationVector, Sign,
    UnitQuaternion, Verdict,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::time::Instant;

// ── Pinned tolerances and sample counts ─────────────────────────────────────

const TOL_TEST_QUAT: f64 = 1e-15;
const TOL_COMPOSE: f64 = 1e-12;
const TOL_SANDWICH: f64 = 1e-13;
const TOL_EXPANSIONS: f64 = 1e-14;
const TOL_ROTVEC_MATRIX: f64 = 1e-12;
const TOL_HALF_VECTOR: f64 = 1e-10;
const TOL_USAGE_ROWS: f64 = 1e-12;
const TOL_KINEMATICS: f64 = 1e-6;
const TOL_MIGRATION: f64 = 1e-12;

const PAIR_SAMPLES: usize = 1000;
const EXPANSION_SAMPLES: usize = 1000;
const ROTVEC_SAMPLES: usize = 100;
const USAGE_SAMPLES: usize = 100;
const PROBE_SAMPLES: usize = 10;
const MIGRATION_TREES: usize = 1000;
const MIGRATION_DEPTH: usize = 6;
const DATASET_RECORDS: usize = 10_000;

fn report(number: usize, name: &str) {
    println!("[acceptance] criterion {number} ({name}): pass");
}

// ── Shared random helpers ───────────────────────────────────────────────────

fn random_quat(rng: &mut ChaCha8Rng, scale: f64) -> Quaternion<f64> {
    Quaternion::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

fn random_unit(rng: &mut ChaCha8Rng) -> UnitQuaternion<f64> {
    loop {
        let q = random_quat(rng, 1.0);
        if q.norm() > 0.1 {
            return UnitQuaternion::normalize(q).unwrap();
        }
    }
}

fn random_vec3(rng: &mut ChaCha8Rng, scale: f64) -> [f64; 3] {
    [
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    ]
}

fn quat_abs_diff(p: Quaternion<f64>, q: Quaternion<f64>) -> f64 {
    let (a, b) = (p.to_array(), q.to_array());
    (0..4).fold(0.0, |acc, i| acc.max((a[i] - b[i]).abs()))
}

/// The discriminating test pair: a 45°-half-angle unit quaternion about z
/// and the 90° rotation matrix about z.
fn test_quaternion() -> UnitQuaternion<f64> {
    let h = 0.5f64.sqrt();
    UnitQuaternion::new(Quaternion::new(h, 0.0, 0.0, h)).unwrap()
}

fn test_matrix() -> [[f64; 3]; 3] {
    [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
}

// ── 1. Basis products ───────────────────────────────────────────────────────

#[test]
fn acceptance_01_basis_products() {
    let i = Quaternion::<f64>::i();
    let j = Quaternion::<f64>::j();
    let k = Quaternion::<f64>::k();

    let hamilton = quat::mul(Multiplication::Hamilton, i, j);
    assert_eq!(hamilton.to_array(), k.to_array());

    let shuster = quat::mul(Multiplication::Shuster, i, j);
    assert_eq!(shuster.to_array(), (-k).to_array());

    report(1, "basis products");
}

// ── 2. Test-quaternion images ───────────────────────────────────────────────

#[test]
fn acceptance_02_test_quaternion_images() {
    let q_t = test_quaternion();
    let c_t = test_matrix();

    let ch = quat_to_matrix(MatrixMap::CH, &q_t);
    assert!(mat_max_abs_diff(*ch.as_mat3(), c_t) <= TOL_TEST_QUAT);

    let cs = quat_to_matrix(MatrixMap::CS, &q_t);
    assert!(mat_max_abs_diff(*cs.as_mat3(), transpose(c_t)) <= TOL_TEST_QUAT);

    report(2, "test-quaternion images");
}

// ── 3. Composition: forward for the paired conventions, reversed otherwise ──

#[test]
fn acceptance_03_composition_signs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x03);
    for _ in 0..PAIR_SAMPLES {
        let p = random_unit(&mut rng);
        let q = random_unit(&mut rng);

        for conv in [QmConvention::HAMILTON_CH, QmConvention::SHUSTER_CS] {
            let product = UnitQuaternion::mul_unit(conv.mult, &p, &q);
            let lhs = quat_to_matrix(conv.map, &product);
            let rhs = quat_to_matrix(conv.map, &p).compose(&quat_to_matrix(conv.map, &q));
            assert!(frobenius_diff(*lhs.as_mat3(), *rhs.as_mat3()) < TOL_COMPOSE);
        }

        // The crossed pairing reverses the matrix order instead.
        let product = UnitQuaternion::mul_unit(Multiplication::Hamilton, &p, &q);
        let lhs = quat_to_matrix(MatrixMap::CS, &product);
        let rhs = quat_to_matrix(MatrixMap::CS, &q).compose(&quat_to_matrix(MatrixMap::CS, &p));
        assert!(frobenius_diff(*lhs.as_mat3(), *rhs.as_mat3()) < TOL_COMPOSE);
    }
    report(3, "composition signs");
}

// ── 4. Sandwich action ──────────────────────────────────────────────────────

#[test]
fn acceptance_04_sandwich_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x04);
    for _ in 0..PAIR_SAMPLES {
        let q = random_unit(&mut rng);
        let x = random_vec3(&mut rng, 2.0);
        for conv in [QmConvention::HAMILTON_CH, QmConvention::SHUSTER_CS] {
            let by_sandwich = rotate(conv.mult, &q, x);
            let by_matrix = quat_to_matrix(conv.map, &q).apply(x);
            assert!(vmax_abs_diff(by_sandwich, by_matrix) <= TOL_SANDWICH);
        }
    }
    report(4, "sandwich action");
}

// ── 5. Equivalent matrix expansions ─────────────────────────────────────────

#[test]
fn acceptance_05_matrix_expansions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05);
    for _ in 0..EXPANSION_SAMPLES {
        let q = *random_unit(&mut rng).as_quaternion();
        let a = euler_rodrigues::operator_form(q);
        let b = euler_rodrigues::unit_form(q);
        let c = euler_rodrigues::entry_form(q);
        assert!(mat_max_abs_diff(a, b) <= TOL_EXPANSIONS);
        assert!(mat_max_abs_diff(b, c) <= TOL_EXPANSIONS);
        assert!(mat_max_abs_diff(a, c) <= TOL_EXPANSIONS);
    }
    report(5, "matrix expansions");
}

// ── 6. Rotation-vector quaternions: matrix agreement and half-vector sign ───

#[test]
fn acceptance_06_rotation_vector_quaternions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x06);
    let signs = [Sign::Plus, Sign::Minus];
    for _ in 0..ROTVEC_SAMPLES {
        // Angles stay below π so the principal-sign normalization inside
        // rotvec_to_quat is a no-op and the half-vector sign is observable.
        let phi = RotationVector::new(random_vec3(&mut rng, 1.7));
        for alpha_c in signs {
            for alpha_phi in signs {
                let f = ConventionFactors::new(alpha_c, alpha_phi);
                for conv in [QmConvention::HAMILTON_CH, QmConvention::SHUSTER_CS] {
                    let q = rotvec_to_quat(conv, f, phi).unwrap();
                    let via_quat = quat_to_matrix(conv.map, &q);
                    let direct = rotvec_to_matrix(f, phi);
                    assert!(
                        mat_max_abs_diff(*via_quat.as_mat3(), *direct.as_mat3())
                            <= TOL_ROTVEC_MATRIX
                    );

                    // Hamilton pairs put +α_C α_φ φ/2 in the exponent;
                    // the flipped product pairs put −α_C α_φ φ/2.
                    let gamma: f64 = conv.gamma().unwrap();
                    let expected = vscale(
                        gamma * alpha_c.value::<f64>() * alpha_phi.value::<f64>() * 0.5,
                        phi.phi,
                    );
                    let half = log_quat(&q).unwrap().imag();
                    assert!(vmax_abs_diff(half, expected) <= TOL_HALF_VECTOR);
                }
            }
        }
    }
    report(6, "rotation-vector quaternions");
}

// ── 7. Usage dialect rows ───────────────────────────────────────────────────

#[test]
fn acceptance_07_usage_dialect_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x07);
    let options = [
        Table2Option::HamiltonOnly,
        Table2Option::Mixed,
        Table2Option::ShusterOnly,
    ];
    for _ in 0..USAGE_SAMPLES {
        let phi = RotationVector::new(random_vec3(&mut rng, 1.7));
        for alpha_phi in [Sign::Plus, Sign::Minus] {
            for option in options {
                for usage in [Usage::Active, Usage::Passive] {
                    let (q, mult) = table2_row(option, usage, alpha_phi, phi);
                    // Each dialect's quaternions are read through the map
                    // its product composes with.
                    let map = match mult {
                        Multiplication::Hamilton => MatrixMap::CH,
                        Multiplication::Shuster => MatrixMap::CS,
                    };
                    // Active rows realize exp(+α_φ φ^×); passive rows its
                    // transpose exp(−α_φ φ^×).
                    let alpha_c = match usage {
                        Usage::Active => Sign::Plus,
                        Usage::Passive => Sign::Minus,
                    };
                    let expected =
                        rotvec_to_matrix(ConventionFactors::new(alpha_c, alpha_phi), phi);
                    let realized = quat_to_matrix(map, &q);
                    assert!(
                        mat_max_abs_diff(*realized.as_mat3(), *expected.as_mat3())
                            <= TOL_USAGE_ROWS,
                        "{option:?}/{usage:?}/{alpha_phi:?}"
                    );
                }
            }
        }
    }
    report(7, "usage dialect rows");
}

// ── 8. Kinematic integration to the test quaternion ─────────────────────────

#[test]
fn acceptance_08_kinematic_integration() {
    let t_end = std::f64::consts::FRAC_PI_2;
    let dt = 1e-3;
    let omega = AngularVelocity::new([0.0, 0.0, 1.0], Frame::A);
    let q0 = UnitQuaternion::<f64>::identity();
    let f = ConventionFactors::new(Sign::Plus, Sign::Plus);
    let q_t = test_quaternion();

    let started = Instant::now();
    for conv in [QmConvention::HAMILTON_CH, QmConvention::SHUSTER_CS] {
        let trajectory = integrate(conv, f, &q0, |_| omega, t_end, dt).unwrap();

        // A quarter turn about z leaves the two conventions holding each
        // other's conjugate.
        let expected = match conv.mult {
            Multiplication::Hamilton => q_t,
            Multiplication::Shuster => q_t.conjugate(),
        };
        let endpoint = trajectory.last().unwrap().q;
        assert!(
            quat_abs_diff(*endpoint.as_quaternion(), *expected.as_quaternion())
                <= TOL_KINEMATICS
        );

        // The matrix trajectory is integrated independently; it must track
        // the quaternion trajectory the whole way.
        for point in &trajectory {
            let from_quat = quat_to_matrix(conv.map, &point.q);
            assert!(
                frobenius_diff(*from_quat.as_mat3(), *point.c.as_mat3()) <= TOL_KINEMATICS
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "integration took {elapsed:?}, budget is 1 s"
    );
    report(8, "kinematic integration");
}

// ── 9. Convention detection ─────────────────────────────────────────────────

#[test]
fn acceptance_09_convention_detection() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x09);
    let conventions = [
        QmConvention::new(MatrixMap::CH, Multiplication::Hamilton),
        QmConvention::new(MatrixMap::CH, Multiplication::Shuster),
        QmConvention::new(MatrixMap::CS, Multiplication::Hamilton),
        QmConvention::new(MatrixMap::CS, Multiplication::Shuster),
    ];

    let table_for = |conv: QmConvention, rng: &mut ChaCha8Rng| {
        let mut table = ProbeTable::default();
        for _ in 0..PROBE_SAMPLES {
            let p = random_quat(rng, 1.5);
            let q = random_quat(rng, 1.5);
            table.product_samples.push(ProductSample {
                p,
                q,
                r: quat::mul(conv.mult, p, q),
            });
            let u = random_unit(rng);
            table.q2m_samples.push(QuatToMatrixSample {
                q: u,
                c: quat_to_matrix(conv.map, &u),
            });
            let v = random_unit(rng);
            table.m2q_samples.push(MatrixToQuatSample {
                c: quat_to_matrix(conv.map, &v),
                q: v.sign_normalized(),
            });
        }
        table
    };

    let mut correct = 0;
    for conv in conventions {
        let table = table_for(conv, &mut rng);
        let result = classify(&table, 1e-6);
        if result.multiplication == Verdict::Found(conv.mult)
            && result.map == Verdict::Found(conv.map)
            && result.homomorphic == Some(conv.is_homomorphic())
        {
            correct += 1;
        }
    }
    assert_eq!(correct, 4, "all four conventions must be identified");

    // A table whose samples disagree about the convention is contradictory,
    // not merely ambiguous.
    let hamilton = table_for(conventions[0], &mut rng);
    let shuster_cs = table_for(conventions[3], &mut rng);
    let mut mixed = ProbeTable::default();
    mixed
        .product_samples
        .extend(hamilton.product_samples.iter().take(5).copied());
    mixed
        .product_samples
        .extend(shuster_cs.product_samples.iter().take(5).copied());
    mixed
        .q2m_samples
        .extend(hamilton.q2m_samples.iter().take(5).copied());
    mixed
        .q2m_samples
        .extend(shuster_cs.q2m_samples.iter().take(5).copied());
    let result = classify(&mixed, 1e-6);
    assert_eq!(result.multiplication, Verdict::Inconsistent);
    assert_eq!(result.map, Verdict::Inconsistent);

    report(9, "convention detection");
}

// ── 10. Formula migration ───────────────────────────────────────────────────

/// Random well-typed expression generator over a fixed input environment.
/// One multiplication tag per tree, as the parser would enforce.
struct TreeGen<'r> {
    rng: &'r mut ChaCha8Rng,
    star: Multiplication,
}

impl TreeGen<'_> {
    fn quat(&mut self, depth: usize) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..3) {
                0 => Expr::Var("q".into(), Type::Quat),
                1 => Expr::Var("p".into(), Type::Quat),
                _ => Expr::ConstQuat(random_quat(self.rng, 0.8)),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..8) {
            0 => Expr::mul(self.star, self.quat(d), self.quat(d)),
            1 => Expr::add(self.quat(d), self.quat(d)),
            2 => Expr::neg(self.quat(d)),
            3 => Expr::scale(self.real(d), self.quat(d)),
            4 => Expr::conj(self.quat(d)),
            5 => Expr::inv(self.quat(d)),
            6 => Expr::pure(self.vec3(d)),
            _ => Expr::expq(self.quat(d)),
        }
    }

    fn real(&mut self, depth: usize) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..2) {
                0 => Expr::Var("s".into(), Type::Real),
                _ => Expr::ConstReal(self.rng.gen_range(-1.0..1.0)),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..5) {
            0 => Expr::add(self.real(d), self.real(d)),
            1 => Expr::neg(self.real(d)),
            2 => Expr::scale(self.real(d), self.real(d)),
            3 => Expr::norm(self.quat(d)),
            _ => Expr::norm(self.vec3(d)),
        }
    }

    fn vec3(&mut self, depth: usize) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..2) {
                0 => Expr::Var("x".into(), Type::Vec3),
                _ => Expr::ConstVec3(random_vec3(self.rng, 0.8)),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..4) {
            0 => Expr::add(self.vec3(d), self.vec3(d)),
            1 => Expr::neg(self.vec3(d)),
            2 => Expr::scale(self.real(d), self.vec3(d)),
            _ => Expr::imag(self.quat(d)),
        }
    }
}

fn random_bindings(rng: &mut ChaCha8Rng) -> HashMap<String, Value> {
    let mut bindings = HashMap::new();
    bindings.insert("q".to_string(), Value::Quat(random_quat(rng, 0.8)));
    bindings.insert("p".to_string(), Value::Quat(random_quat(rng, 0.8)));
    bindings.insert("x".to_string(), Value::Vec3(random_vec3(rng, 0.8)));
    bindings.insert("s".to_string(), Value::Real(rng.gen_range(-1.0..1.0)));
    bindings
}

fn conjugate_quat_bindings(bindings: &HashMap<String, Value>) -> HashMap<String, Value> {
    bindings
        .iter()
        .map(|(name, value)| {
            let flipped = match value {
                Value::Quat(q) => Value::Quat(q.conjugate()),
                other => *other,
            };
            (name.clone(), flipped)
        })
        .collect()
}

/// Largest absolute component of a value, for the magnitude guard.
fn value_magnitude(value: &Value) -> f64 {
    match value {
        Value::Quat(q) => q.to_array().iter().fold(0.0f64, |a, c| a.max(c.abs())),
        Value::Vec3(v) => v.iter().fold(0.0f64, |a, c| a.max(c.abs())),
        Value::Real(x) => x.abs(),
        Value::Bool(_) => 0.0,
    }
}

fn value_abs_diff(a: Value, b: Value) -> f64 {
    match (a, b) {
        (Value::Quat(p), Value::Quat(q)) => quat_abs_diff(p, q),
        (Value::Vec3(u), Value::Vec3(v)) => vmax_abs_diff(u, v),
        (Value::Real(x), Value::Real(y)) => (x - y).abs(),
        _ => f64::INFINITY,
    }
}

#[test]
fn acceptance_10_formula_migration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    let inputs = vec![
        ("q".to_string(), Type::Quat),
        ("p".to_string(), Type::Quat),
        ("x".to_string(), Type::Vec3),
        ("s".to_string(), Type::Real),
    ];

    let mut accepted = 0usize;
    let mut attempts = 0usize;
    while accepted < MIGRATION_TREES {
        attempts += 1;
        assert!(attempts < 100 * MIGRATION_TREES, "generator starved");

        let star = if rng.gen_bool(0.5) {
            Multiplication::Hamilton
        } else {
            Multiplication::Shuster
        };
        let output_type = match accepted % 3 {
            0 => Type::Quat,
            1 => Type::Real,
            _ => Type::Vec3,
        };
        let mut gen = TreeGen {
            rng: &mut rng,
            star,
        };
        let expr = match output_type {
            Type::Quat => gen.quat(MIGRATION_DEPTH),
            Type::Real => gen.real(MIGRATION_DEPTH),
            _ => gen.vec3(MIGRATION_DEPTH),
        };
        let tool = Tool {
            expr,
            inputs: inputs.clone(),
            output_type,
        };

        let bindings = random_bindings(&mut rng);
        // Inversions of near-zero subexpressions make the 1e-12 comparison
        // meaningless; keep only trees that evaluate to tame values.
        let original = match dsl::evaluate(&tool, &bindings) {
            Ok(value) if value_magnitude(&value).is_finite() && value_magnitude(&value) < 100.0 => {
                value
            }
            _ => continue,
        };
        accepted += 1;

        // Conjugation law: on conjugated quaternion bindings the translated
        // tree computes the conjugate (quat output) or the identical value.
        let mirrored = conjugate_quat_bindings(&bindings);
        let translated = dsl::evaluate(&dsl::translate(&tool), &mirrored).unwrap();
        let expected = match original {
            Value::Quat(value) => Value::Quat(value.conjugate()),
            other => other,
        };
        assert!(
            value_abs_diff(translated, expected) <= TOL_MIGRATION,
            "translate law failed: {translated:?} vs {expected:?}"
        );

        // Double interface collapses to the original once the introduced
        // conjugation pairs cancel.
        let round_trip = dsl::simplify(&dsl::interface(&dsl::interface(&tool)));
        assert_eq!(round_trip.expr, dsl::simplify(&tool).expr);
    }

    // Worked rewrite examples: each source, pushed through its rewrite and
    // simplified, must equal the simplified parse of the expected text.
    let examples: [(&str, fn(&Tool) -> Tool, &str); 4] = [
        (
            "(0,1,0,0) *s (0,0,1,0) == -(0,0,0,1)",
            dsl::translate,
            "(0,1,0,0) *h (0,0,1,0) == (0,0,0,1)",
        ),
        ("in q: quat; imag(q)", dsl::interface, "in q: quat; -imag(q)"),
        (
            "in q: quat; in w: vec3; -0.5 * (q *s pure(w))",
            dsl::translate,
            "in q: quat; in w: vec3; 0.5 * (q *h pure(w))",
        ),
        (
            "in q: quat; in x: vec3; imag(q *s pure(x) *s inv(q))",
            dsl::translate,
            "in q: quat; in x: vec3; imag(q *h pure(x) *h inv(q))",
        ),
    ];
    for (source, rewrite, expected) in examples {
        let rewritten = dsl::simplify(&rewrite(&dsl::parse(source).unwrap()));
        let target = dsl::simplify(&dsl::parse(expected).unwrap());
        assert_eq!(rewritten.expr, target.expr, "`{source}`");
    }

    report(10, "formula migration");
}

// ── 11. Dataset round-trip ──────────────────────────────────────────────────

#[test]
fn acceptance_11_dataset_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    let records: Vec<Quaternion<f64>> = (0..DATASET_RECORDS)
        .map(|_| random_quat(&mut rng, 10.0))
        .collect();
    let ds = QuatDataset {
        header: DatasetHeader {
            multiplication: Multiplication::Hamilton,
            map: MatrixMap::CH,
            order: ComponentOrder::Wxyz,
        },
        records,
    };

    let bits = |q: &Quaternion<f64>| q.to_array().map(f64::to_bits);

    // Migrate to the other convention and back: every record bit-identical.
    let there = migrate_dataset(&ds, QmConvention::SHUSTER_CS).unwrap();
    let back = migrate_dataset(&there, QmConvention::HAMILTON_CH).unwrap();
    assert_eq!(back.records.len(), ds.records.len());
    for (a, b) in back.records.iter().zip(&ds.records) {
        assert_eq!(bits(a), bits(b));
    }

    // The same holds through serialized form.
    let mut buffer = Vec::new();
    write_dataset(&mut buffer, &there).unwrap();
    let reread = read_dataset(buffer.as_slice()).unwrap();
    let back = migrate_dataset(&reread, QmConvention::HAMILTON_CH).unwrap();
    for (a, b) in back.records.iter().zip(&ds.records) {
        assert_eq!(bits(a), bits(b));
    }

    report(11, "dataset roundtrip");
}
