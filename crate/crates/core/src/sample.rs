//! Seeded random inputs for property checks and self-check suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade::Blade;
use crate::form::Form;
use crate::function::FourierFn;
use crate::laurent::{Laurent, QLaurent};
use crate::linalg::Matrix;
use crate::poly::MultiPoly;
use crate::quantum::{Bivector, QForm};
use crate::scalar::{Gaussian, Rational, Ring};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational, numerator in -4..=4 and denominator in 1..=3.
pub fn rational(rng: &mut SampleRng) -> Rational {
    let n = rng.gen_range(-4i64..=4);
    let d = rng.gen_range(1i64..=3);
    Rational::new(n, d).expect("positive denominator")
}

pub fn nonzero_rational(rng: &mut SampleRng) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn gaussian(rng: &mut SampleRng) -> Gaussian {
    Gaussian::new(rational(rng), rational(rng))
}

pub fn blade(rng: &mut SampleRng, dim: usize) -> Blade {
    Blade::from_bits(rng.gen_range(0..(1u64 << dim)))
}

pub fn square_matrix(rng: &mut SampleRng, dim: usize) -> Matrix<Rational> {
    let data = (0..dim * dim).map(|_| rational(rng)).collect();
    Matrix::new(dim, dim, data).expect("square")
}

pub fn bivector(rng: &mut SampleRng, dim: usize) -> Bivector {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let v = rational(rng);
            m.set(i, j, v.clone());
            m.set(j, i, -v);
        }
    }
    Bivector::new(m).expect("antisymmetric by construction")
}

/// Laurent coefficient with exponents in `lo..=hi`.
pub fn laurent(rng: &mut SampleRng, lo: i64, hi: i64) -> QLaurent {
    let mut c = QLaurent::zero();
    for _ in 0..rng.gen_range(1..=2) {
        c.add_term(rng.gen_range(lo..=hi), &nonzero_rational(rng));
    }
    c
}

/// Random form with at most `terms` blades and polynomial `h` dependence.
pub fn qform(rng: &mut SampleRng, dim: usize, terms: usize) -> QForm {
    let mut f = QForm::zero(dim);
    for _ in 0..rng.gen_range(1..=terms) {
        let b = blade(rng, dim);
        f.add_term(b, &laurent(rng, 0, 1));
    }
    f
}

/// Random form in a single total degree `k`, exponents between `lo` and `hi`.
pub fn qform_homogeneous(rng: &mut SampleRng, dim: usize, k: i64, lo: i64, hi: i64, terms: usize) -> QForm {
    let mut f = QForm::zero(dim);
    for _ in 0..terms {
        let p = rng.gen_range(lo..=hi);
        let g = k - 2 * p;
        if g < 0 || g > dim as i64 {
            continue;
        }
        let bl = Blade::of_grade(dim, g as usize);
        let b = bl[rng.gen_range(0..bl.len())];
        f.add_term(b, &QLaurent::monomial(p, nonzero_rational(rng)));
    }
    f
}

/// Polynomial in `nvars` variables of total degree at most `deg`.
pub fn polyfn(rng: &mut SampleRng, nvars: usize, deg: u32) -> MultiPoly<Rational> {
    let mut p = MultiPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut e = vec![0u32; nvars];
        let mut left = rng.gen_range(0..=deg);
        while left > 0 {
            e[rng.gen_range(0..nvars)] += 1;
            left -= 1;
        }
        p.add_term(e, &nonzero_rational(rng));
    }
    p
}

/// Field form on a flat model: polynomial coefficients, `h` exponents `0..=1`.
pub fn poly_field_form(rng: &mut SampleRng, dim: usize, deg: u32, terms: usize) -> Form<Laurent<MultiPoly<Rational>>> {
    let mut f = Form::zero(dim);
    for _ in 0..rng.gen_range(1..=terms) {
        let b = blade(rng, dim);
        let e = rng.gen_range(0..=1);
        f.add_term(b, &Laurent::monomial(e, polyfn(rng, dim, deg)));
    }
    f
}

/// Field form with a fixed form degree.
pub fn poly_field_form_of_grade(
    rng: &mut SampleRng,
    dim: usize,
    grade: usize,
    deg: u32,
    terms: usize,
) -> Form<Laurent<MultiPoly<Rational>>> {
    let bl = Blade::of_grade(dim, grade);
    let mut f = Form::zero(dim);
    for _ in 0..rng.gen_range(1..=terms) {
        let b = bl[rng.gen_range(0..bl.len())];
        f.add_term(b, &Laurent::constant(polyfn(rng, dim, deg)));
    }
    f
}

/// Trigonometric polynomial with modes bounded by `n` in sup norm.
pub fn fourier(rng: &mut SampleRng, dim: usize, n: i32) -> FourierFn {
    let mut f = FourierFn::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let k: Vec<i32> = (0..dim).map(|_| rng.gen_range(-n..=n)).collect();
        f.add_term(k, 0, &gaussian(rng));
    }
    f
}

pub fn fourier_field_form(rng: &mut SampleRng, dim: usize, n: i32, terms: usize) -> Form<Laurent<FourierFn>> {
    let mut f = Form::zero(dim);
    for _ in 0..rng.gen_range(1..=terms) {
        let b = blade(rng, dim);
        let e = rng.gen_range(-1..=1);
        f.add_term(b, &Laurent::monomial(e, fourier(rng, dim, n)));
    }
    f
}
