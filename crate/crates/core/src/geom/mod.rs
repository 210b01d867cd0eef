//! Charts, frames, exponential and logarithm at the origin, the geodesic ODE
//! oracle, isometric transport and geodesic distance.

mod exp;
mod frame;
mod ode;
mod point;
mod transport;

pub use exp::{exp0, exp0_frame, log0, TAN_POLE_TOL};
pub use frame::{
    chart_of_frame, chart_order, chart_transition, frame_of_chart, raw_frame, Frame, CHART_SINGULAR_TOL,
    FRAME_TOL,
};
pub(crate) use frame::permute_rows;
pub use ode::{geodesic_ode, BLOW_UP, MIN_STEPS};
pub use point::{ChartPoint, TangentVector};
pub use transport::{distance, frame_distance, transport_frame_to_origin, transport_to_origin, Isometry};
