use she_core::model::build_elementary_system;
use she_core::param::build_parametric_rur;
use she_core::rational::rat;
use she_core::rur::{rur_fixed, rur_fixed_with_t};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let p3 = build_parametric_rur(3).unwrap();
    println!("n=3 build: {:?} (chi degree {})", t0.elapsed(), p3.degree());

    let sys4 = build_elementary_system(4).unwrap();
    let t0 = Instant::now();
    let r = rur_fixed(&sys4.reduced, &rat(1, 2)).unwrap();
    println!("n=4 single sample at 1/2: {:?} (dim {})", t0.elapsed(), r.chi.degree_or_zero());
    let t0 = Instant::now();
    let r = rur_fixed_with_t(&sys4.reduced, &rat(7, 23), &r.t).unwrap();
    println!("n=4 single sample at 7/23: {:?} (dim {})", t0.elapsed(), r.chi.degree_or_zero());

    let sys5 = build_elementary_system(5).unwrap();
    let t0 = Instant::now();
    let r = rur_fixed(&sys5.reduced, &rat(1, 2)).unwrap();
    println!("n=5 single sample at 1/2: {:?} (dim {})", t0.elapsed(), r.chi.degree_or_zero());
    let t0 = Instant::now();
    let r2 = rur_fixed_with_t(&sys5.reduced, &rat(7, 23), &r.t).unwrap();
    println!("n=5 single sample at 7/23: {:?} (dim {})", t0.elapsed(), r2.chi.degree_or_zero());
    let t0 = Instant::now();
    let r3 = rur_fixed_with_t(&sys5.reduced, &rat(11, 40), &r.t).unwrap();
    println!("n=5 single sample at 11/40: {:?} (dim {})", t0.elapsed(), r3.chi.degree_or_zero());
}
