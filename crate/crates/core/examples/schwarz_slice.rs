//! Slice constant k, disc radius R and the Schwarz gap bound along a curve.

use finite_type_lindelof::lindelof::{slice_trace, LambdaGrid, Tolerances};
use finite_type_lindelof::{
    BoundedHolomorphicFunction, ComplexPoint, DomainModel, ExponentFamily, Schedule, ZetaCurve,
};

fn main() -> finite_type_lindelof::Result<()> {
    let domain = DomainModel::egg(2);
    let frame = domain.boundary_frame(ComplexPoint::real(1.0, 0.0), 4)?;
    let curve = ZetaCurve::Family(ExponentFamily::new(1.0, 1.0, 0.5, 0.02));

    let rows = slice_trace(
        BoundedHolomorphicFunction::Product,
        &domain,
        &frame,
        &curve,
        &Schedule::default(),
        &LambdaGrid::default(),
        &Tolerances::default(),
    )?;
    println!(
        "{:>10} {:>8} {:>10} {:>10} {:>10}  status",
        "s", "k", "R", "gap", "bound"
    );
    for r in rows.iter().step_by(4) {
        println!(
            "{:>10.1e} {:>8.4} {:>10.3e} {:>10.3e} {:>10.3e}  {:?}",
            r.s,
            r.k.unwrap_or(f64::INFINITY),
            r.radius.unwrap_or(f64::INFINITY),
            r.gap,
            r.bound.unwrap_or(f64::NAN),
            r.status
        );
    }
    Ok(())
}
