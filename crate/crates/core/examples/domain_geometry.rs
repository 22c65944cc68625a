//! Membership, boundary frames and projection onto the complex normal line.

use finite_type_lindelof::geometry::project_to_normal_line;
use finite_type_lindelof::{ComplexPoint, DomainModel};

fn main() -> finite_type_lindelof::Result<()> {
    let egg = DomainModel::egg(2);
    for p in [
        ComplexPoint::real(0.5, 0.5),
        ComplexPoint::real(1.0, 0.0),
        ComplexPoint::real(1.0, 0.5),
    ] {
        println!(
            "{p}: rho = {:+.4}, {:?}",
            egg.eval_rho(&p),
            egg.contains(&p)
        );
    }

    let zeta = ComplexPoint::real(1.0, 0.0);
    let frame = egg.boundary_frame(zeta, 4)?;
    println!("normal {}  tangent {}", frame.nu, frame.tau);

    let p = ComplexPoint::real(0.9, 0.2);
    let gamma = project_to_normal_line(&p, &frame);
    println!("{p} projects to {gamma}");
    println!(
        "normal depth {}, tangential offset {}",
        frame.normal_depth(&p),
        frame.tangential_offset(&p)
    );
    Ok(())
}
