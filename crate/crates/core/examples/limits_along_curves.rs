//! Limit estimates of the catalog functions along two approaches to (1, 0).

use std::f64::consts::FRAC_PI_6;

use finite_type_lindelof::holo::CATALOG;
use finite_type_lindelof::lindelof::estimate_limit;
use finite_type_lindelof::{ComplexPoint, DomainModel, ExponentFamily, Schedule, ZetaCurve};

fn main() -> finite_type_lindelof::Result<()> {
    let domain = DomainModel::egg(2);
    let frame = domain.boundary_frame(ComplexPoint::real(1.0, 0.0), 4)?;
    let sch = Schedule::default();
    let curves = [
        ("radial", ZetaCurve::Family(ExponentFamily::radial())),
        (
            "cone pi/6",
            ZetaCurve::Family(ExponentFamily::radial().with_normal_angle(FRAC_PI_6)),
        ),
    ];
    for f in CATALOG {
        for (name, c) in &curves {
            let est = estimate_limit(f, &domain, &frame, c, &sch, 1e-6)?;
            println!("{:<7} {:<10} {:?}", f.id(), name, est.status);
        }
    }
    Ok(())
}
