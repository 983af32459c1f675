use super::two_d::{right_part, TruncationData2d};
use crate::circuits::{Circuit, Collapse};
use crate::error::{Error, Result};
use crate::lattice::Region;
use crate::pairing::{eta, LocalizedAutomorphism};
use crate::symop::SymOp;

/// Replaces `beta` by `Ad_v . beta`, i.e. `beta'(g,h) = v(g,h) beta(g,h)`, and
/// `u` by
/// `v(g,h) beta(g,h)(v(gh,k)) u(g,h,k) [rho(g) beta(h,k) rho(g)^{-1}](v(g,hk)^{-1}) rho(g)(v(h,k)^{-1})`.
/// `v` is indexed like `beta` and must be supported near the origin.
pub fn regauge_beta(data: &TruncationData2d, v: &[SymOp]) -> Result<TruncationData2d> {
    let grp = data.group.clone();
    let n = grp.order();
    if v.len() != n * n {
        return Err(Error::Support { what: "v".into(), detail: format!("expected {} entries", n * n) });
    }
    let disk = data.disk();
    for (i, vi) in v.iter().enumerate() {
        if !disk.contains_all(&vi.support()) {
            return Err(Error::Support {
                what: format!("v({},{})", grp.name(i / n), grp.name(i % n)),
                detail: format!("{vi} leaves {disk}"),
            });
        }
    }
    let vv = |a: usize, b: usize| &v[a * n + b];
    let mut out = data.clone();
    out.u = (0..n * n * n)
        .map(|i| {
            let t = grp.tuple_at(i, 3);
            let (g, h, k) = (t[0], t[1], t[2]);
            let (gh, hk) = (grp.mul(g, h), grp.mul(h, k));
            vv(g, h)
                .mul(&vv(gh, k).conj(data.beta(g, h)))
                .mul(data.u(g, h, k))
                .mul(&data.twisted_beta_apply(g, h, k, &vv(g, hk).inv()))
                .mul(&data.rho(g).conj_unchecked(&vv(h, k).inv()))
        })
        .collect();
    out.beta = data.beta.iter().zip(v).map(|(b, vi)| vi.mul(b)).collect();
    out.refresh_alpha();
    out.log.push("beta regauged".into());
    Ok(out)
}

/// Splits a boundary operator into `(gamma_L, gamma_R)` with
/// `gamma = gamma_L gamma_R` and `gamma_R` its `x >= 0` part.
pub fn split_gamma(gamma: &SymOp) -> (SymOp, SymOp) {
    let r = right_part(gamma);
    (gamma.mul(&r.inv()), r)
}

/// Replaces `rho(g)` by `gamma(g) rho(g)` for boundary-localized unitaries
/// `gamma(g)`, and updates `beta`, `u`, `mu` and `alpha` accordingly.
pub fn regauge_rho(data: &TruncationData2d, gamma: &[SymOp]) -> Result<TruncationData2d> {
    let grp = data.group.clone();
    let n = grp.order();
    if gamma.len() != n {
        return Err(Error::Support { what: "gamma".into(), detail: format!("expected {n} entries") });
    }
    let strip = data.strip();
    for (g, c) in gamma.iter().enumerate() {
        let off: Vec<_> = c.support().into_iter().filter(|s| !strip.contains(s)).collect();
        if !off.is_empty() {
            return Err(Error::Support {
                what: format!("gamma({})", grp.name(g)),
                detail: format!("sites {off:?} leave {strip}"),
            });
        }
    }
    let reach_y = gamma.iter().flat_map(|c| c.support()).map(|s| s.y.unsigned_abs()).max().unwrap_or(0);
    let reach = gamma
        .iter()
        .flat_map(|c| c.support())
        .filter(|s| !data.window.in_edge_zone(s))
        .map(|s| s.norm())
        .max()
        .unwrap_or(0);
    let mut out = data.clone();
    out.strip_width = data.strip_width.max(reach_y + data.range);
    out.disk_radius = data.disk_radius.max(reach + 2 * data.range + 1);
    let strip = out.strip();
    let split: Vec<(SymOp, SymOp)> = gamma.iter().map(split_gamma).collect();
    let gl = |g: usize| &split[g].0;
    let gr = |g: usize| &split[g].1;
    let window = data.window;
    let crop = |op: &SymOp, what: String| -> Result<SymOp> {
        Collapse::localize(op, &window, &strip)
            .map(|c| c.op)
            .map_err(|e| Error::Support { what, detail: e.to_string() })
    };
    let rho = |g: usize| data.rho(g);
    let mut beta_new = Vec::with_capacity(n * n);
    for g in grp.elements() {
        for h in grp.elements() {
            let b = gr(g)
                .mul(&rho(g).conj_unchecked(gr(h)))
                .mul(data.beta(g, h))
                .mul(&gr(grp.mul(g, h)).inv());
            beta_new.push(crop(&b, format!("beta'({},{})", grp.name(g), grp.name(h)))?);
        }
    }
    let left = Region::half_line_l(data.range + 1);
    let right = Region::half_line_r(data.range + 1);
    let mut u_new = Vec::with_capacity(n * n * n);
    for i in 0..n * n * n {
        let t = grp.tuple_at(i, 3);
        let (g, h, k) = (t[0], t[1], t[2]);
        let gh = grp.mul(g, h);
        // gamma_R(g) . rho(g) gamma_R(h) rho(g)^{-1}, as a unitary
        let twist_h = rho(g).conj_unchecked(gr(h));
        let outer = |x: &SymOp| x.conj(&twist_h).conj(gr(g));
        let first = {
            let y = rho(gh).conj_unchecked(gr(k)).conj(data.beta(g, h));
            let e = eta(
                &LocalizedAutomorphism::inner(data.alpha(g, h).clone(), left.clone()),
                &LocalizedAutomorphism::inner(y, right.clone()),
                window,
            )?;
            outer(&e)
        };
        let second = {
            let w = rho(g).conj_unchecked(&rho(h).conj_unchecked(gr(k)));
            outer(&data.u(g, h, k).conj(&w))
        };
        let third = {
            let y = rho(g).conj_unchecked(&beta_new[h * n + k]).conj(gr(g));
            eta(
                &LocalizedAutomorphism::inner(gl(g).clone(), left.clone()),
                &LocalizedAutomorphism::inner(y, right.clone()),
                window,
            )?
        };
        let u = first.mul(&second).mul(&third);
        let disk = out.disk();
        u_new.push(
            Collapse::localize(&u, &window, &disk)
                .map_err(|e| Error::Support {
                    what: format!("u'({},{},{})", grp.name(g), grp.name(h), grp.name(k)),
                    detail: e.to_string(),
                })?
                .op
                .mul(&SymOp::sign(u.poly.has_constant())),
        );
    }
    out.rho_tilde = grp
        .elements()
        .map(|g| Circuit::concat(&[&Circuit::from_symop(&gamma[g], window), rho(g)]))
        .collect();
    out.beta = beta_new;
    out.u = u_new;
    out.refresh_mu()?;
    out.alpha = out
        .mu
        .iter()
        .zip(&out.beta)
        .enumerate()
        .map(|(i, (m, b))| crop(&m.mul(&b.inv()), format!("alpha'({},{})", grp.name(i / n), grp.name(i % n))))
        .collect::<Result<_>>()?;
    out.log.push("rho regauged".into());
    Ok(out)
}
