//! Type of boundary points via analytic disc jets.

use finite_type_lindelof::type_analysis::{best_contact, Order, TypeSearch};
use finite_type_lindelof::{point_type, ComplexPoint, DomainModel};

fn main() -> finite_type_lindelof::Result<()> {
    for m in 1..=3 {
        let t = point_type(&DomainModel::egg(m), ComplexPoint::real(1.0, 0.0), 4, 64)?;
        println!("egg {m} at (1, 0): type {t}");
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    println!(
        "ball at ({s:.4}, {s:.4}): type {}",
        point_type(&DomainModel::ball(), ComplexPoint::real(s, s), 4, 64)?
    );

    // the tangent line only reaches order 2 here; the best disc bends
    let sheared = DomainModel::sheared_egg(2);
    let contact = best_contact(
        &sheared,
        ComplexPoint::real(1.0, 0.0),
        &TypeSearch::default(),
    )?;
    if let Order::Finite(k) = contact.order {
        let coeffs: Vec<String> = contact
            .witnessed_disc
            .coeffs()
            .iter()
            .map(ToString::to_string)
            .collect();
        println!(
            "sheared egg 2: order {k} along disc with coefficients {}",
            coeffs.join(", ")
        );
    }

    match point_type(&DomainModel::egg(2), ComplexPoint::real(0.5, 0.0), 4, 64) {
        Err(e) => println!("interior point: {e}"),
        Ok(t) => println!("unexpected type {t}"),
    }
    Ok(())
}
