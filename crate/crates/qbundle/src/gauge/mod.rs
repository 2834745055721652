//! The gauge group and its graded extension, vertical automorphisms,
//! connections, curvature and the gauge action on connections.

pub mod connection;
pub mod exact;
pub mod graded;
pub mod group;

pub use connection::{
    connection_from_form, connection_from_template, convex_combine, covariant_derivative, covariant_leibniz_check,
    curvature_equivariance_check, curvature_form, curvature_nabla, flatness_check, gauge_act, is_strong, make_connection_form, AssociatedElement, Connection, ConnectionForm,
};
pub use exact::ExactForms;
pub use graded::{graded_mul, graded_round_trip_check, graded_vertical, GradedGauge};
pub use group::{
    from_vertical, gauge_from_template, gauge_inv, gauge_mul, make_gauge, theta_round_trip_check, to_vertical, GaugeTransformation,
    VerticalAutomorphism,
};

#[cfg(test)]
mod tests;
