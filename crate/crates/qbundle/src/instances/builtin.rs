//! Instance files shipped with the crate.

pub const NAMES: &[&str] = &["u1", "u1q", "torus", "su_q2", "hopf_u1", "smash_w"];

const FILES: &[(&str, &str)] = &[
    ("u1", include_str!("../../instances/u1.qb")),
    ("u1q", include_str!("../../instances/u1q.qb")),
    ("torus", include_str!("../../instances/torus.qb")),
    ("su_q2", include_str!("../../instances/su_q2.qb")),
    ("hopf_u1", include_str!("../../instances/hopf_u1.qb")),
    ("smash_w", include_str!("../../instances/smash_w.qb")),
];

/// Source text of a builtin instance.
pub fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
