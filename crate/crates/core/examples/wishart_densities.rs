//! Wishart and eigenvalue densities, plus a simulated sample covariance.

use covlab::rng::{GaussianStream, Purpose, StreamId};
use covlab::spectra::Spectrum;
use covlab::wishart::{
    joint_eig_logdensity_isotropic, sample_covariance, sample_gaussian_matrix, wishart_logpdf,
    Matrix,
};

fn main() -> covlab::Result<()> {
    let sigma = Matrix::from_rows(&[vec![2.0, 0.3], vec![0.3, 1.0]])?;
    let m = Matrix::from_rows(&[vec![9.0, 1.0], vec![1.0, 5.0]])?;
    println!(
        "log W_2(6, Σ) at M: {:.10}",
        wishart_logpdf(&m, 6.0, &sigma)?
    );
    println!(
        "log joint eigen-density (8, 4) of W_2(6, I): {:.10}",
        joint_eig_logdensity_isotropic(&[8.0, 4.0], 6.0, 1.0)?
    );

    let spectrum = Spectrum::new(vec![3.0, 2.0, 1.0, 0.5])?;
    let mut stream = GaussianStream::new(11, StreamId::new(Purpose::Auxiliary, 4, 0));
    let x = sample_gaussian_matrix(4, 4000, &spectrum, &mut stream)?;
    let s = sample_covariance(&x)?;
    println!("population spectrum {:?}", spectrum.values());
    let eig: Vec<String> = s.eigenvalues()?.iter().map(|v| format!("{v:.4}")).collect();
    println!("sample spectrum (n = 4000) [{}]", eig.join(", "));
    Ok(())
}
