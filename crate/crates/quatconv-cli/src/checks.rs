//! The built-in identity suite behind `quatconv check`: each group runs a
//! batch of randomized identities against the library and tallies failures.
//! Groups are deterministic for a given `--seed`, so a report can be
//! reproduced verbatim on another machine.

use quatconv::kinematics::{
    integrate, matrix_derivative, omega_from_matrix_rate, omega_from_quat_rate, quat_derivative,
    AngularVelocity, Frame, KinematicFactors,
};
use quatconv::linalg::{frobenius_diff, mat_max_abs_diff, transpose, vmax_abs_diff};
use quatconv::quat::{self, Quaternion, UnitQuaternion};
use quatconv::rotvec::{rotvec_to_matrix, rotvec_to_quat, table2_row, Table2Option, Usage};
use quatconv::so3::{euler_rodrigues, quat_to_matrix, rotate};
use quatconv::{
    ConventionFactors, MatrixMap, Multiplication, QmConvention, RotationVector, Sign,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::maps;

// ── Tolerances and batch sizes ───────────────────────────────────────

const TOL_TIGHT: f64 = 1e-12;
const TOL_EXPANSIONS: f64 = 1e-14;
const TOL_ROUND_TRIP: f64 = 1e-11;
const TOL_RECOVERY: f64 = 1e-9;
const TOL_ENDPOINT: f64 = 1e-6;
const BATCH: usize = 100;

const SIGNS: [Sign; 2] = [Sign::Plus, Sign::Minus];
const HOMOMORPHIC: [QmConvention; 2] = [QmConvention::HAMILTON_CH, QmConvention::SHUSTER_CS];

// ── Reporting ────────────────────────────────────────────────────────

pub struct GroupReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
}

impl Tally {
    fn is(&mut self, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

/// Names of all identity groups, in execution order.
pub const GROUP_NAMES: [&str; 7] = [
    "products",
    "homomorphy",
    "sandwich",
    "expansions",
    "rotvec",
    "table2",
    "kinematics",
];

/// Runs one named group. Returns `None` for an unknown name.
pub fn run_group(name: &str, seed: u64) -> Option<GroupReport> {
    let index = GROUP_NAMES.iter().position(|g| *g == name)?;
    // Decorrelate groups so filtering one never changes its draws.
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1 + index as u64));
    let mut tally = Tally::default();
    match name {
        "products" => group_products(&mut tally, &mut rng),
        "homomorphy" => group_homomorphy(&mut tally, &mut rng),
        "sandwich" => group_sandwich(&mut tally, &mut rng),
        "expansions" => group_expansions(&mut tally, &mut rng),
        "rotvec" => group_rotvec(&mut tally, &mut rng),
        "table2" => group_table2(&mut tally, &mut rng),
        "kinematics" => group_kinematics(&mut tally, &mut rng),
        _ => unreachable!(),
    }
    Some(GroupReport {
        name: GROUP_NAMES[index],
        checks: tally.checks,
        failures: tally.failures,
    })
}

// ── Random draws ─────────────────────────────────────────────────────

fn random_quat(rng: &mut ChaCha8Rng) -> Quaternion<f64> {
    Quaternion::new(
        rng.gen_range(-1.5..1.5),
        rng.gen_range(-1.5..1.5),
        rng.gen_range(-1.5..1.5),
        rng.gen_range(-1.5..1.5),
    )
}

fn random_unit(rng: &mut ChaCha8Rng) -> UnitQuaternion<f64> {
    loop {
        let q = random_quat(rng);
        if q.norm() > 0.1 {
            return UnitQuaternion::normalize(q).unwrap();
        }
    }
}

fn random_vec3(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    ]
}

/// Rotation vector with angle below π, so principal-vector round trips are
/// exact instead of merely congruent mod 2π.
fn random_rotvec(rng: &mut ChaCha8Rng) -> RotationVector<f64> {
    RotationVector::new([
        rng.gen_range(-1.7..1.7),
        rng.gen_range(-1.7..1.7),
        rng.gen_range(-1.7..1.7),
    ])
}

fn quat_abs_diff(p: Quaternion<f64>, q: Quaternion<f64>) -> f64 {
    let (a, b) = (p.to_array(), q.to_array());
    (0..4).fold(0.0, |acc, i| acc.max((a[i] - b[i]).abs()))
}

// ── Groups ───────────────────────────────────────────────────────────

/// Basis products of both multiplications, plus the algebraic identities
/// every quaternion product must satisfy.
fn group_products(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let i = Quaternion::<f64>::i();
    let j = Quaternion::<f64>::j();
    let k = Quaternion::<f64>::k();

    // The two products disagree exactly on the cyclic basis products.
    let cycles = [(i, j, k), (j, k, i), (k, i, j)];
    for (a, b, c) in cycles {
        t.is(quat::mul(Multiplication::Hamilton, a, b) == c);
        t.is(quat::mul(Multiplication::Shuster, a, b) == -c);
    }
    // ... and agree on the squares.
    for e in [i, j, k] {
        for star in [Multiplication::Hamilton, Multiplication::Shuster] {
            t.is(quat::mul(star, e, e) == -Quaternion::one());
        }
    }

    for _ in 0..BATCH {
        let p = random_quat(rng);
        let q = random_quat(rng);
        for star in [Multiplication::Hamilton, Multiplication::Shuster] {
            let pq = quat::mul(star, p, q);
            // Norm multiplicativity.
            t.is((pq.norm() - p.norm() * q.norm()).abs() <= TOL_TIGHT * 10.0);
            // Conjugation reverses either product.
            let lhs = pq.conjugate();
            let rhs = quat::mul(star, q.conjugate(), p.conjugate());
            t.is(quat_abs_diff(lhs, rhs) <= TOL_TIGHT);
        }
    }
}

/// Matrix images of products: forward order for the two paired conventions,
/// reversed order for the crossed pairings, and the discriminating
/// test-quaternion images.
fn group_homomorphy(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let s = 0.5f64.sqrt();
    let q_t = UnitQuaternion::new(Quaternion::new(s, 0.0, 0.0, s)).unwrap();
    let c_t = [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
    t.is(mat_max_abs_diff(*quat_to_matrix(MatrixMap::CH, &q_t).as_mat3(), c_t) <= 1e-15);
    t.is(
        mat_max_abs_diff(
            *quat_to_matrix(MatrixMap::CS, &q_t).as_mat3(),
            transpose(c_t),
        ) <= 1e-15,
    );

    for _ in 0..BATCH {
        let p = random_unit(rng);
        let q = random_unit(rng);
        for map in [MatrixMap::CH, MatrixMap::CS] {
            for star in [Multiplication::Hamilton, Multiplication::Shuster] {
                let conv = QmConvention::new(map, star);
                let product = quat_to_matrix(map, &UnitQuaternion::mul_unit(star, &p, &q));
                let forward = quat_to_matrix(map, &p).compose(&quat_to_matrix(map, &q));
                let reversed = quat_to_matrix(map, &q).compose(&quat_to_matrix(map, &p));
                let expected = if conv.is_homomorphic() { forward } else { reversed };
                t.is(
                    frobenius_diff(*product.as_mat3(), *expected.as_mat3()) <= TOL_TIGHT,
                );
            }
        }
    }
}

/// The sandwich product moves vectors exactly as the matrix image does.
fn group_sandwich(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for _ in 0..BATCH {
        let q = random_unit(rng);
        let x = random_vec3(rng);
        for conv in HOMOMORPHIC {
            let by_sandwich = rotate(conv.mult, &q, x);
            let by_matrix = quat_to_matrix(conv.map, &q).apply(x);
            t.is(vmax_abs_diff(by_sandwich, by_matrix) <= 1e-13);
        }
    }
}

/// The three expansions of the quaternion-to-matrix map agree pairwise.
fn group_expansions(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for _ in 0..BATCH {
        let q = *random_unit(rng).as_quaternion();
        let a = euler_rodrigues::operator_form(q);
        let b = euler_rodrigues::unit_form(q);
        let c = euler_rodrigues::entry_form(q);
        t.is(mat_max_abs_diff(a, b) <= TOL_EXPANSIONS);
        t.is(mat_max_abs_diff(b, c) <= TOL_EXPANSIONS);
        t.is(mat_max_abs_diff(a, c) <= TOL_EXPANSIONS);
    }
}

/// Rotation-vector maps: quaternion and matrix exponentials agree for every
/// sign choice, and the principal-vector inverses round-trip.
fn group_rotvec(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for _ in 0..25 {
        let phi = random_rotvec(rng);
        for alpha_c in SIGNS {
            for alpha_phi in SIGNS {
                let f = ConventionFactors::new(alpha_c, alpha_phi);
                let c = rotvec_to_matrix(f, phi);
                // Inverse rotation: transpose equals the flipped-sign map.
                let c_back = rotvec_to_matrix(
                    ConventionFactors::new(alpha_c.flipped(), alpha_phi),
                    phi,
                );
                t.is(
                    frobenius_diff(*c.transposed().as_mat3(), *c_back.as_mat3())
                        <= TOL_TIGHT,
                );
                t.is(vmax_abs_diff(maps::matrix_to_rotvec(f, &c), phi.phi) <= TOL_ROUND_TRIP);

                for conv in HOMOMORPHIC {
                    let q = rotvec_to_quat(conv, f, phi).unwrap();
                    t.is(
                        frobenius_diff(
                            *quat_to_matrix(conv.map, &q).as_mat3(),
                            *c.as_mat3(),
                        ) <= TOL_TIGHT,
                    );
                    t.is(
                        vmax_abs_diff(maps::quat_to_rotvec(conv, f, &q).unwrap(), phi.phi)
                            <= TOL_ROUND_TRIP,
                    );
                }
            }
        }
    }
}

/// Usage-table rows: every dialect row realizes the rotation matrix its
/// active/passive column promises, under the dialect's own map.
fn group_table2(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let options = [
        Table2Option::HamiltonOnly,
        Table2Option::Mixed,
        Table2Option::ShusterOnly,
    ];
    for _ in 0..25 {
        let phi = random_rotvec(rng);
        for alpha_phi in SIGNS {
            for option in options {
                for usage in [Usage::Active, Usage::Passive] {
                    let (q, mult) = table2_row(option, usage, alpha_phi, phi);
                    let map = match mult {
                        Multiplication::Hamilton => MatrixMap::CH,
                        Multiplication::Shuster => MatrixMap::CS,
                    };
                    let alpha_c = match usage {
                        Usage::Active => Sign::Plus,
                        Usage::Passive => Sign::Minus,
                    };
                    let expected =
                        rotvec_to_matrix(ConventionFactors::new(alpha_c, alpha_phi), phi);
                    t.is(
                        mat_max_abs_diff(
                            *quat_to_matrix(map, &q).as_mat3(),
                            *expected.as_mat3(),
                        ) <= TOL_TIGHT,
                    );
                }
            }
        }
    }
}

/// Kinematics: angular-velocity recovery inverts both rate equations, and a
/// quarter turn about z integrates to the test quaternion (or its conjugate).
fn group_kinematics(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for _ in 0..25 {
        let q = random_unit(rng);
        let omega_vec = random_vec3(rng);
        for frame in [Frame::A, Frame::B] {
            let omega = AngularVelocity::new(omega_vec, frame);
            for alpha_c in SIGNS {
                let f = ConventionFactors::new(alpha_c, Sign::Plus);
                let k = KinematicFactors::new(alpha_c);
                let c = quat_to_matrix(MatrixMap::CH, &q);
                let cdot = matrix_derivative(f, &c, &omega);
                t.is(
                    vmax_abs_diff(omega_from_matrix_rate(k, frame, &c, cdot), omega_vec)
                        <= TOL_RECOVERY,
                );
                for conv in HOMOMORPHIC {
                    let qdot = quat_derivative(conv, f, &q, &omega).unwrap();
                    t.is(
                        vmax_abs_diff(
                            omega_from_quat_rate(conv, k, frame, &q, qdot).unwrap(),
                            omega_vec,
                        ) <= TOL_RECOVERY,
                    );
                }
            }
        }
    }

    // Quarter turn about z from identity, both conventions.
    let s = 0.5f64.sqrt();
    let q_t = Quaternion::new(s, 0.0, 0.0, s);
    let omega = AngularVelocity::new([0.0, 0.0, 1.0], Frame::A);
    let f = ConventionFactors::new(Sign::Plus, Sign::Plus);
    for conv in HOMOMORPHIC {
        let trajectory = integrate(
            conv,
            f,
            &UnitQuaternion::identity(),
            |_| omega,
            std::f64::consts::FRAC_PI_2,
            1e-3,
        )
        .unwrap();
        let expected = match conv.mult {
            Multiplication::Hamilton => q_t,
            Multiplication::Shuster => q_t.conjugate(),
        };
        let end = trajectory.last().unwrap();
        t.is(quat_abs_diff(*end.q.as_quaternion(), expected) <= TOL_ENDPOINT);
        t.is(
            frobenius_diff(
                *quat_to_matrix(conv.map, &end.q).as_mat3(),
                *end.c.as_mat3(),
            ) <= TOL_ENDPOINT,
        );
    }
}

// ── Tests ────────────────────────────────────────────────────────────
