//! Grid realisation of the intertwining transform
//! `𝒯u(x,y) = (2π)^{−1/2} ∫ e^{−izy} u(βx + αz, βx + βγδ^{−1}z) dz`,
//! its inverse, and the round-trip / intertwining checks.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::CheckReport;
use crate::operators::TwistedFrame;
use crate::{c64, Error, Result};

/// Uniform complex grid on `[−L, L]²`, row-major in `x`.
#[derive(Clone)]
pub struct Grid2 {
    pub l: f64,
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl Grid2 {
    pub fn sample(l: f64, n: usize, f: &dyn Fn(f64, f64) -> Complex64) -> Self {
        assert!(n.is_power_of_two(), "grid size must be a power of two");
        let mut data = Vec::with_capacity(n * n);
        for ix in 0..n {
            let x = Self::coord_of(l, n, ix);
            for iy in 0..n {
                data.push(f(x, Self::coord_of(l, n, iy)));
            }
        }
        Self { l, n, data }
    }

    #[inline]
    fn coord_of(l: f64, n: usize, i: usize) -> f64 {
        -l + 2.0 * l * i as f64 / n as f64
    }

    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        Self::coord_of(self.l, self.n, i)
    }

    #[inline]
    pub fn step(&self) -> f64 {
        2.0 * self.l / self.n as f64
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.data[ix * self.n + iy]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest magnitude on the outermost ring of the grid.
    pub fn boundary_max(&self) -> f64 {
        let n = self.n;
        let mut m: f64 = 0.0;
        for i in 0..n {
            m = m.max(self.at(0, i).norm());
            m = m.max(self.at(n - 1, i).norm());
            m = m.max(self.at(i, 0).norm());
            m = m.max(self.at(i, n - 1).norm());
        }
        m
    }

    /// Six-point Lagrange weights for interpolation at fractional index `fi`.
    fn lagrange6(fi: f64, n: usize) -> Option<(usize, [f64; 6])> {
        if !(0.0..=(n - 1) as f64).contains(&fi) {
            return None;
        }
        let base = ((fi.floor() as isize) - 2).clamp(0, n as isize - 6) as usize;
        let mut w = [0.0_f64; 6];
        for (k, wk) in w.iter_mut().enumerate() {
            let xk = (base + k) as f64;
            let mut acc = 1.0;
            for m in 0..6 {
                if m != k {
                    let xm = (base + m) as f64;
                    acc *= (fi - xm) / (xk - xm);
                }
            }
            *wk = acc;
        }
        Some((base, w))
    }

    /// Interpolated value at real coordinates, zero outside the grid.
    pub fn interp(&self, s: f64, t: f64) -> Complex64 {
        let h = self.step();
        let fi = (s + self.l) / h;
        let fj = (t + self.l) / h;
        let (Some((bi, wi)), Some((bj, wj))) =
            (Self::lagrange6(fi, self.n), Self::lagrange6(fj, self.n))
        else {
            return c64(0.0, 0.0);
        };
        let mut acc = c64(0.0, 0.0);
        for (k, wk) in wi.iter().enumerate() {
            let row = (bi + k) * self.n;
            let mut inner = c64(0.0, 0.0);
            for (m, wm) in wj.iter().enumerate() {
                inner += *wm * self.data[row + bj + m];
            }
            acc += *wk * inner;
        }
        acc
    }

    pub fn rel_l2_diff(&self, other: &Grid2) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, b) in self.data.iter().zip(&other.data) {
            num += (a - b).norm_sqr();
            den += b.norm_sqr();
        }
        (num / den.max(1e-300)).sqrt()
    }
}

/// In-place radix-2 FFT; `inverse` includes the `1/n` normalisation.
fn fft(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    // Bit reversal.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let wlen = c64(ang.cos(), ang.sin());
        let mut i = 0;
        while i < n {
            let mut w = c64(1.0, 0.0);
            for k in 0..len / 2 {
                let u = buf[i + k];
                let v = buf[i + k + len / 2] * w;
                buf[i + k] = u + v;
                buf[i + k + len / 2] = u - v;
                w *= wlen;
            }
            i += len;
        }
        len <<= 1;
    }
    if inverse {
        let inv = 1.0 / n as f64;
        for v in buf.iter_mut() {
            *v *= inv;
        }
    }
}

/// Spectral application of `D = −i∂` along one axis (period `2L`); exact for
/// band-limited data, spectrally accurate for Schwartz samples.
pub fn spectral_d(grid: &Grid2, along_x: bool) -> Grid2 {
    let n = grid.n;
    let mut out = grid.clone();
    let mut line = vec![c64(0.0, 0.0); n];
    let kappa: Vec<f64> = (0..n)
        .map(|m| {
            let m_signed = if m < n / 2 { m as isize } else { m as isize - n as isize };
            if m == n / 2 {
                0.0
            } else {
                PI * m_signed as f64 / grid.l
            }
        })
        .collect();
    for fixed in 0..n {
        for (k, slot) in line.iter_mut().enumerate() {
            *slot = if along_x {
                grid.at(k, fixed)
            } else {
                grid.at(fixed, k)
            };
        }
        fft(&mut line, false);
        for (k, v) in line.iter_mut().enumerate() {
            *v *= kappa[k];
        }
        fft(&mut line, true);
        for (k, v) in line.iter().enumerate() {
            if along_x {
                out.data[k * n + fixed] = *v;
            } else {
                out.data[fixed * n + k] = *v;
            }
        }
    }
    out
}

fn frame_transform_ok(frame: &TwistedFrame) -> Result<(f64, f64)> {
    let slope = frame.beta * frame.gamma / frame.delta;
    if frame.alpha.abs() < 0.05 || slope.abs() < 0.05 {
        return Err(Error::Domain(format!(
            "grid transform needs |α| and |βγ/δ| bounded away from zero, got α = {}, βγ/δ = {slope}",
            frame.alpha
        )));
    }
    Ok((frame.alpha, slope))
}

/// Forward transform on the grid; returns the transformed grid and a flag set
/// when the input carries non-negligible boundary mass.
pub fn transform_forward(u: &Grid2, frame: &TwistedFrame) -> Result<(Grid2, bool)> {
    frame.validate()?;
    let (alpha, slope) = frame_transform_ok(frame)?;
    let n = u.n;
    let l = u.l;
    let boundary_warning = u.boundary_max() > 1e-12 * u.max_abs().max(1e-300);
    let mut out = Grid2 {
        l,
        n,
        data: vec![c64(0.0, 0.0); n * n],
    };
    let n_z = 2 * n;
    let norm = 1.0 / (2.0 * PI).sqrt();
    let mut g = vec![c64(0.0, 0.0); n_z + 1];
    for ix in 0..n {
        let x = u.coord(ix);
        // z-ranges keeping both arguments inside [−L, L].
        let r1 = sorted_interval((-l - frame.beta * x) / alpha, (l - frame.beta * x) / alpha);
        let r2 = sorted_interval((-l - frame.beta * x) / slope, (l - frame.beta * x) / slope);
        let za = r1.0.max(r2.0);
        let zb = r1.1.min(r2.1);
        if zb <= za {
            continue;
        }
        let dz = (zb - za) / n_z as f64;
        for (k, gk) in g.iter_mut().enumerate() {
            let z = za + k as f64 * dz;
            *gk = u.interp(frame.beta * x + alpha * z, frame.beta * x + slope * z);
        }
        for iy in 0..n {
            let y = u.coord(iy);
            // Trapezoid in z with incremental phase.
            let step = c64(0.0, -dz * y).exp();
            let mut phase = c64(0.0, -za * y).exp();
            let mut acc = 0.5 * g[0] * phase;
            for gk in g.iter().take(n_z).skip(1) {
                phase *= step;
                acc += gk * phase;
            }
            phase *= step;
            acc += 0.5 * g[n_z] * phase;
            out.data[ix * n + iy] = norm * dz * acc;
        }
    }
    Ok((out, boundary_warning))
}

fn sorted_interval(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Inverse transform
/// `𝒯⁻¹v(x,y) = (2π)^{−1/2} ∫ e^{itδ(x−y)} v(αδβ^{−1}y − γx, t) dt` on the
/// grid, integrating over the native `t` nodes.
pub fn transform_inverse(v: &Grid2, frame: &TwistedFrame) -> Result<Grid2> {
    frame.validate()?;
    frame_transform_ok(frame)?;
    let n = v.n;
    let l = v.l;
    let h = v.step();
    let norm = 1.0 / (2.0 * PI).sqrt();
    let mut out = Grid2 {
        l,
        n,
        data: vec![c64(0.0, 0.0); n * n],
    };
    for ix in 0..n {
        let x = v.coord(ix);
        for iy in 0..n {
            let y = v.coord(iy);
            let s = frame.alpha * frame.delta / frame.beta * y - frame.gamma * x;
            let fi = (s + l) / h;
            let Some((base, w)) = Grid2::lagrange6(fi, n) else {
                continue;
            };
            let freq = frame.delta * (x - y);
            let t0 = v.coord(0);
            let step = c64(0.0, h * freq).exp();
            let mut phase = c64(0.0, t0 * freq).exp();
            let mut acc = c64(0.0, 0.0);
            for j in 0..n {
                let mut val = c64(0.0, 0.0);
                for (k, wk) in w.iter().enumerate() {
                    val += *wk * v.data[(base + k) * n + j];
                }
                let weight = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                acc += weight * val * phase;
                phase *= step;
            }
            out.data[ix * n + iy] = norm * h * acc;
        }
    }
    Ok(out)
}

/// Round-trip `𝒯⁻¹(𝒯u) = u` in relative `L²`.
pub fn transform_roundtrip_check(
    name: &str,
    f: &dyn Fn(f64, f64) -> Complex64,
    frame: &TwistedFrame,
    l: f64,
    n: usize,
) -> Result<CheckReport> {
    let u = Grid2::sample(l, n, f);
    let (v, warn) = transform_forward(&u, frame)?;
    let w = transform_inverse(&v, frame)?;
    let residual = w.rel_l2_diff(&u);
    let mut report = CheckReport::new(
        format!("transform/roundtrip-{name}"),
        residual,
        1e-6,
        serde_json::json!({"l": l, "n": n}),
    );
    if warn {
        report.warnings.push("boundary mass above threshold".into());
    }
    Ok(report)
}

/// Intertwining identity `𝒯(x·u) = (−α D_y + β M_x) 𝒯u` in relative `L²`.
pub fn intertwine_mx_check(
    name: &str,
    f: &dyn Fn(f64, f64) -> Complex64,
    frame: &TwistedFrame,
    l: f64,
    n: usize,
) -> Result<CheckReport> {
    let u = Grid2::sample(l, n, f);
    let xu = Grid2::sample(l, n, &|x, y| x * f(x, y));
    let (w, _) = transform_forward(&u, frame)?;
    let (t1, _) = transform_forward(&xu, frame)?;
    let dyw = spectral_d(&w, false);
    let mut rhs = w.clone();
    for ix in 0..n {
        let x = rhs.coord(ix);
        for iy in 0..n {
            rhs.data[ix * n + iy] =
                -frame.alpha * dyw.at(ix, iy) + frame.beta * x * w.at(ix, iy);
        }
    }
    let residual = t1.rel_l2_diff(&rhs).min(rhs.rel_l2_diff(&t1));
    Ok(CheckReport::new(
        format!("transform/intertwine-mx-{name}"),
        residual,
        1e-5,
        serde_json::json!({"l": l, "n": n}),
    ))
}

/// Intertwining identity `𝒯(D_x u) = (−γ D_x + δ M_y) 𝒯u`; the input-side
/// derivative is supplied analytically.
pub fn intertwine_dx_check(
    name: &str,
    f: &dyn Fn(f64, f64) -> Complex64,
    dxf: &dyn Fn(f64, f64) -> Complex64,
    frame: &TwistedFrame,
    l: f64,
    n: usize,
) -> Result<CheckReport> {
    let u = Grid2::sample(l, n, f);
    let du = Grid2::sample(l, n, dxf);
    let (w, _) = transform_forward(&u, frame)?;
    let (t2, _) = transform_forward(&du, frame)?;
    let dxw = spectral_d(&w, true);
    let mut rhs = w.clone();
    for ix in 0..n {
        for iy in 0..n {
            let y = rhs.coord(iy);
            rhs.data[ix * n + iy] =
                -frame.gamma * dxw.at(ix, iy) + frame.delta * y * w.at(ix, iy);
        }
    }
    let residual = t2.rel_l2_diff(&rhs).min(rhs.rel_l2_diff(&t2));
    Ok(CheckReport::new(
        format!("transform/intertwine-dx-{name}"),
        residual,
        1e-5,
        serde_json::json!({"l": l, "n": n}),
    ))
}
