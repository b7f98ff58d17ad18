use nalgebra::{Complex, DMatrix};

/// A complex matrix held as separate real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub re: DMatrix<f64>,
    pub im: DMatrix<f64>,
}

impl ComplexMatrix {
    pub fn real(re: DMatrix<f64>) -> Self {
        let im = DMatrix::zeros(re.nrows(), re.ncols());
        ComplexMatrix { re, im }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix::real(DMatrix::zeros(rows, cols))
    }

    pub fn shape(&self) -> (usize, usize) {
        self.re.shape()
    }

    pub fn to_complex(&self) -> DMatrix<Complex<f64>> {
        self.re.zip_map(&self.im, Complex::new)
    }

    pub fn from_complex(m: &DMatrix<Complex<f64>>) -> Self {
        ComplexMatrix {
            re: m.map(|z| z.re),
            im: m.map(|z| z.im),
        }
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn mul_real(&self, rhs: &DMatrix<f64>) -> ComplexMatrix {
        ComplexMatrix {
            re: &self.re * rhs,
            im: &self.im * rhs,
        }
    }

    /// Entrywise `|z|²`.
    pub fn abs_squared(&self) -> DMatrix<f64> {
        self.re.zip_map(&self.im, |a, b| a * a + b * b)
    }

    /// `e^{iθ} · self`.
    pub fn rotate(&self, theta: f64) -> ComplexMatrix {
        let (s, c) = theta.sin_cos();
        ComplexMatrix {
            re: &self.re * c - &self.im * s,
            im: &self.re * s + &self.im * c,
        }
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix {
            re: self.re.transpose(),
            im: -self.im.transpose(),
        }
    }

    pub fn trace_re(&self) -> f64 {
        self.re.trace()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        let dre = &self.re - &other.re;
        let dim = &self.im - &other.im;
        dre.zip_map(&dim, |a, b| a.hypot(b)).amax()
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}
