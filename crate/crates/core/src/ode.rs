//! Dormand-Prince 8(5,3) with 7th-order dense output.
//!
//! Step control and tableau follow Hairer's DOP853; the error norm uses a
//! single scale `atol + rtol·‖y‖_∞` shared by all components so that a
//! solution component passing through zero does not stall the step size.

#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Dop853 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub h_init: f64,
}

impl Default for Dop853 {
    fn default() -> Self {
        Self { rtol: 1e-13, atol: 1e-280, max_steps: 200_000, h_init: 1e-2 }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

type State<const N: usize> = [f64; N];

fn axpy<const N: usize>(y: &State<N>, h: f64, terms: &[(f64, &State<N>)]) -> State<N> {
    let mut out = *y;
    for i in 0..N {
        let mut s = 0.0;
        for (c, k) in terms {
            s += c * k[i];
        }
        out[i] += h * s;
    }
    out
}

fn comb<const N: usize>(terms: &[(f64, &State<N>)]) -> State<N> {
    let mut out = [0.0; N];
    for i in 0..N {
        for (c, k) in terms {
            out[i] += c * k[i];
        }
    }
    out
}

fn inf_norm<const N: usize>(y: &State<N>) -> f64 {
    y.iter().fold(0.0, |m, v| m.max(v.abs()))
}

struct Dense<const N: usize> {
    x_old: f64,
    h: f64,
    r: [State<N>; 8],
}

impl<const N: usize> Dense<N> {
    fn eval(&self, x: f64) -> State<N> {
        let s = (x - self.x_old) / self.h;
        let s1 = 1.0 - s;
        let r = &self.r;
        let mut out = [0.0; N];
        for i in 0..N {
            out[i] = r[0][i]
                + s * (r[1][i] + s1 * (r[2][i] + s * (r[3][i] + s1 * (r[4][i] + s * (r[5][i] + s1 * (r[6][i] + s * r[7][i]))))));
        }
        out
    }
}

impl Dop853 {
    pub fn with_tolerance(rtol: f64) -> Self {
        Self { rtol, ..Self::default() }
    }

    /// Integrate `y' = f(t, y)` from `(t0, y0)` and return `y` at each of
    /// `outputs`, which must be sorted ascending and lie in `[t0, ∞)`.
    pub fn solve<const N: usize, F>(&self, f: F, t0: f64, y0: State<N>, outputs: &[f64]) -> Result<(Vec<State<N>>, OdeStats)>
    where
        F: Fn(f64, &State<N>) -> State<N>,
    {
        let mut stats = OdeStats::default();
        let mut result = Vec::with_capacity(outputs.len());
        if outputs.windows(2).any(|w| w[1] < w[0]) || outputs.first().is_some_and(|&x| x < t0) {
            return Err(Error::InvalidParams("ODE outputs must be sorted and ≥ t0".into()));
        }
        let mut next = 0;
        while next < outputs.len() && outputs[next] == t0 {
            result.push(y0);
            next += 1;
        }
        let Some(&t_end) = outputs.last() else {
            return Ok((result, stats));
        };
        if next == outputs.len() {
            return Ok((result, stats));
        }

        let mut x = t0;
        let mut y = y0;
        let mut dy = f(x, &y);
        stats.evaluations += 1;
        let mut h = self.h_init.min(t_end - t0);
        let mut reject = false;

        while next < outputs.len() {
            if stats.accepted + stats.rejected >= self.max_steps {
                return Err(Error::Integration(format!("step budget exhausted at t = {x}")));
            }
            if x + h > t_end {
                h = t_end - x;
            }
            let step = self.attempt(&f, x, &y, &dy, h);
            stats.evaluations += 11;
            let err = step.err;
            if !err.is_finite() {
                return Err(Error::Integration(format!("non-finite state near t = {x}")));
            }
            if err <= 1.0 {
                let scale = if err == 0.0 { MAX_SCALE } else { (SAFE * err.powf(-ALPHA)).clamp(MIN_SCALE, MAX_SCALE) };
                let h_next = if reject { h * scale.min(1.0) } else { h * scale };
                reject = false;
                stats.accepted += 1;

                let x_new = if x + h >= t_end { t_end } else { x + h };
                let dy_new = f(x_new, &step.y_out);
                stats.evaluations += 1;
                let needs_dense = outputs[next] < x_new;
                if needs_dense {
                    let dense = self.dense(&f, x, &y, &dy, &dy_new, &step, h);
                    stats.evaluations += 3;
                    while next < outputs.len() && outputs[next] < x_new {
                        result.push(dense.eval(outputs[next]));
                        next += 1;
                    }
                }
                while next < outputs.len() && outputs[next] == x_new {
                    result.push(step.y_out);
                    next += 1;
                }
                x = x_new;
                y = step.y_out;
                dy = dy_new;
                h = h_next;
            } else {
                stats.rejected += 1;
                reject = true;
                h *= MIN_SCALE.max(SAFE * err.powf(-ALPHA));
                if h.abs() <= f64::EPSILON * x.abs().max(1e-300) {
                    return Err(Error::Integration(format!("step size underflow at t = {x}")));
                }
            }
        }
        Ok((result, stats))
    }

    fn attempt<const N: usize, F>(&self, f: &F, x: f64, y: &State<N>, dy: &State<N>, h: f64) -> Step<N>
    where
        F: Fn(f64, &State<N>) -> State<N>,
    {
        let k1 = *dy;
        let k2 = f(x + C2 * h, &axpy(y, h, &[(A21, &k1)]));
        let k3 = f(x + C3 * h, &axpy(y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(x + C4 * h, &axpy(y, h, &[(A41, &k1), (A43, &k3)]));
        let k5 = f(x + C5 * h, &axpy(y, h, &[(A51, &k1), (A53, &k3), (A54, &k4)]));
        let k6 = f(x + C6 * h, &axpy(y, h, &[(A61, &k1), (A64, &k4), (A65, &k5)]));
        let k7 = f(x + C7 * h, &axpy(y, h, &[(A71, &k1), (A74, &k4), (A75, &k5), (A76, &k6)]));
        let k8 = f(x + C8 * h, &axpy(y, h, &[(A81, &k1), (A84, &k4), (A85, &k5), (A86, &k6), (A87, &k7)]));
        let k9 = f(x + C9 * h, &axpy(y, h, &[(A91, &k1), (A94, &k4), (A95, &k5), (A96, &k6), (A97, &k7), (A98, &k8)]));
        let k10 = f(
            x + C10 * h,
            &axpy(y, h, &[(A101, &k1), (A104, &k4), (A105, &k5), (A106, &k6), (A107, &k7), (A108, &k8), (A109, &k9)]),
        );
        let k11 = f(
            x + C11 * h,
            &axpy(
                y,
                h,
                &[(A111, &k1), (A114, &k4), (A115, &k5), (A116, &k6), (A117, &k7), (A118, &k8), (A119, &k9), (A1110, &k10)],
            ),
        );
        let k12 = f(
            x + h,
            &axpy(
                y,
                h,
                &[
                    (A121, &k1),
                    (A124, &k4),
                    (A125, &k5),
                    (A126, &k6),
                    (A127, &k7),
                    (A128, &k8),
                    (A129, &k9),
                    (A1210, &k10),
                    (A1211, &k11),
                ],
            ),
        );
        let bsum = comb(&[(B1, &k1), (B6, &k6), (B7, &k7), (B8, &k8), (B9, &k9), (B10, &k10), (B11, &k11), (B12, &k12)]);
        let y_out = axpy(y, h, &[(1.0, &bsum)]);
        let err1 = comb(&[(1.0, &bsum), (-BHH1, &k1), (-BHH2, &k9), (-BHH3, &k12)]);
        let err2 = comb(&[(ER1, &k1), (ER6, &k6), (ER7, &k7), (ER8, &k8), (ER9, &k9), (ER10, &k10), (ER11, &k11), (ER12, &k12)]);

        let sk = self.atol + self.rtol * inf_norm(y).max(inf_norm(&y_out));
        // e5: fifth-order estimate, e3: third-order estimate
        let (mut e5, mut e3) = (0.0, 0.0);
        for i in 0..N {
            e3 += (err1[i] / sk).powi(2);
            e5 += (err2[i] / sk).powi(2);
        }
        let deno = e5 + 0.01 * e3;
        let deno = if deno > 0.0 { deno } else { 1.0 };
        let err = h.abs() * e5 * (1.0 / (N as f64 * deno)).sqrt();
        Step { y_out, err, k: [k1, k6, k7, k8, k9, k10, k11, k12] }
    }

    #[allow(clippy::too_many_arguments)]
    fn dense<const N: usize, F>(
        &self,
        f: &F,
        x: f64,
        y: &State<N>,
        dy: &State<N>,
        dy_new: &State<N>,
        step: &Step<N>,
        h: f64,
    ) -> Dense<N>
    where
        F: Fn(f64, &State<N>) -> State<N>,
    {
        let [k1, k6, k7, k8, k9, k10, k11, k12] = &step.k;
        let ydiff = comb(&[(1.0, &step.y_out), (-1.0, y)]);
        let bspl = comb(&[(h, dy), (-1.0, &ydiff)]);
        let r4 = comb(&[(1.0, &ydiff), (-h, dy_new), (-1.0, &bspl)]);
        let r5 = comb(&[(D41, k1), (D46, k6), (D47, k7), (D48, k8), (D49, k9), (D410, k10), (D411, k11), (D412, k12)]);
        let r6 = comb(&[(D51, k1), (D56, k6), (D57, k7), (D58, k8), (D59, k9), (D510, k10), (D511, k11), (D512, k12)]);
        let r7 = comb(&[(D61, k1), (D66, k6), (D67, k7), (D68, k8), (D69, k9), (D610, k10), (D611, k11), (D612, k12)]);
        let r8 = comb(&[(D71, k1), (D76, k6), (D77, k7), (D78, k8), (D79, k9), (D710, k10), (D711, k11), (D712, k12)]);
        let k14 = f(
            x + C14 * h,
            &axpy(
                y,
                h,
                &[(A141, k1), (A147, k7), (A148, k8), (A149, k9), (A1410, k10), (A1411, k11), (A1412, k12), (A1413, dy_new)],
            ),
        );
        let k15 = f(
            x + C15 * h,
            &axpy(
                y,
                h,
                &[(A151, k1), (A156, k6), (A157, k7), (A158, k8), (A1511, k11), (A1512, k12), (A1513, dy_new), (A1514, &k14)],
            ),
        );
        let k16 = f(
            x + C16 * h,
            &axpy(
                y,
                h,
                &[(A161, k1), (A166, k6), (A167, k7), (A168, k8), (A169, k9), (A1613, dy_new), (A1614, &k14), (A1615, &k15)],
            ),
        );
        let finish = |r: &State<N>, d: [f64; 4]| {
            let mut out = comb(&[(1.0, r), (d[0], dy_new), (d[1], &k14), (d[2], &k15), (d[3], &k16)]);
            out.iter_mut().for_each(|v| *v *= h);
            out
        };
        Dense {
            x_old: x,
            h,
            r: [
                *y,
                ydiff,
                bspl,
                r4,
                finish(&r5, [D413, D414, D415, D416]),
                finish(&r6, [D513, D514, D515, D516]),
                finish(&r7, [D613, D614, D615, D616]),
                finish(&r8, [D713, D714, D715, D716]),
            ],
        }
    }
}

struct Step<const N: usize> {
    y_out: State<N>,
    err: f64,
    k: [State<N>; 8],
}

const ALPHA: f64 = 1.0 / 8.0;
const SAFE: f64 = 0.9;
const MIN_SCALE: f64 = 0.333;
const MAX_SCALE: f64 = 6.0;

const C2: f64 = 0.526001519587677318785587544488e-01;
const C3: f64 = 0.789002279381515978178381316732e-01;
const C4: f64 = 0.118350341907227396726757197510e+00;
const C5: f64 = 0.281649658092772603273242802490e+00;
const C6: f64 = 0.333333333333333333333333333333e+00;
const C7: f64 = 0.25e+00;
const C8: f64 = 0.307692307692307692307692307692e+00;
const C9: f64 = 0.651282051282051282051282051282e+00;
const C10: f64 = 0.6e+00;
const C11: f64 = 0.857142857142857142857142857142e+00;
const C14: f64 = 0.1e+00;
const C15: f64 = 0.2e+00;
const C16: f64 = 0.777777777777777777777777777778e+00;
const B1: f64 = 5.42937341165687622380535766363e-2;
const B6: f64 = 4.45031289275240888144113950566e0;
const B7: f64 = 1.89151789931450038304281599044e0;
const B8: f64 = -5.8012039600105847814672114227e0;
const B9: f64 = 3.1116436695781989440891606237e-1;
const B10: f64 = -1.52160949662516078556178806805e-1;
const B11: f64 = 2.01365400804030348374776537501e-1;
const B12: f64 = 4.47106157277725905176885569043e-2;
const BHH1: f64 = 0.244094488188976377952755905512e+00;
const BHH2: f64 = 0.733846688281611857341361741547e+00;
const BHH3: f64 = 0.220588235294117647058823529412e-01;
const ER1: f64 = 0.1312004499419488073250102996e-01;
const ER6: f64 = -0.1225156446376204440720569753e+01;
const ER7: f64 = -0.4957589496572501915214079952e+00;
const ER8: f64 = 0.1664377182454986536961530415e+01;
const ER9: f64 = -0.3503288487499736816886487290e+00;
const ER10: f64 = 0.3341791187130174790297318841e+00;
const ER11: f64 = 0.8192320648511571246570742613e-01;
const ER12: f64 = -0.2235530786388629525884427845e-01;
const A21: f64 = 5.26001519587677318785587544488e-2;
const A31: f64 = 1.97250569845378994544595329183e-2;
const A32: f64 = 5.91751709536136983633785987549e-2;
const A41: f64 = 2.95875854768068491816892993775e-2;
const A43: f64 = 8.87627564304205475450678981324e-2;
const A51: f64 = 2.41365134159266685502369798665e-1;
const A53: f64 = -8.84549479328286085344864962717e-1;
const A54: f64 = 9.24834003261792003115737966543e-1;
const A61: f64 = 3.7037037037037037037037037037e-2;
const A64: f64 = 1.70828608729473871279604482173e-1;
const A65: f64 = 1.25467687566822425016691814123e-1;
const A71: f64 = 3.7109375e-2;
const A74: f64 = 1.70252211019544039314978060272e-1;
const A75: f64 = 6.02165389804559606850219397283e-2;
const A76: f64 = -1.7578125e-2;
const A81: f64 = 3.70920001185047927108779319836e-2;
const A84: f64 = 1.70383925712239993810214054705e-1;
const A85: f64 = 1.07262030446373284651809199168e-1;
const A86: f64 = -1.53194377486244017527936158236e-2;
const A87: f64 = 8.27378916381402288758473766002e-3;
const A91: f64 = 6.24110958716075717114429577812e-1;
const A94: f64 = -3.36089262944694129406857109825e0;
const A95: f64 = -8.68219346841726006818189891453e-1;
const A96: f64 = 2.75920996994467083049415600797e1;
const A97: f64 = 2.01540675504778934086186788979e1;
const A98: f64 = -4.34898841810699588477366255144e1;
const A101: f64 = 4.77662536438264365890433908527e-1;
const A104: f64 = -2.48811461997166764192642586468e0;
const A105: f64 = -5.90290826836842996371446475743e-1;
const A106: f64 = 2.12300514481811942347288949897e1;
const A107: f64 = 1.52792336328824235832596922938e1;
const A108: f64 = -3.32882109689848629194453265587e1;
const A109: f64 = -2.03312017085086261358222928593e-2;
const A111: f64 = -9.3714243008598732571704021658e-1;
const A114: f64 = 5.18637242884406370830023853209e0;
const A115: f64 = 1.09143734899672957818500254654e0;
const A116: f64 = -8.14978701074692612513997267357e0;
const A117: f64 = -1.85200656599969598641566180701e1;
const A118: f64 = 2.27394870993505042818970056734e1;
const A119: f64 = 2.49360555267965238987089396762e0;
const A1110: f64 = -3.0467644718982195003823669022e0;
const A121: f64 = 2.27331014751653820792359768449e0;
const A124: f64 = -1.05344954667372501984066689879e1;
const A125: f64 = -2.00087205822486249909675718444e0;
const A126: f64 = -1.79589318631187989172765950534e1;
const A127: f64 = 2.79488845294199600508499808837e1;
const A128: f64 = -2.85899827713502369474065508674e0;
const A129: f64 = -8.87285693353062954433549289258e0;
const A1210: f64 = 1.23605671757943030647266201528e1;
const A1211: f64 = 6.43392746015763530355970484046e-1;
const A141: f64 = 5.61675022830479523392909219681e-2;
const A147: f64 = 2.53500210216624811088794765333e-1;
const A148: f64 = -2.46239037470802489917441475441e-1;
const A149: f64 = -1.24191423263816360469010140626e-1;
const A1410: f64 = 1.5329179827876569731206322685e-1;
const A1411: f64 = 8.20105229563468988491666602057e-3;
const A1412: f64 = 7.56789766054569976138603589584e-3;
const A1413: f64 = -8.298e-3;
const A151: f64 = 3.18346481635021405060768473261e-2;
const A156: f64 = 2.83009096723667755288322961402e-2;
const A157: f64 = 5.35419883074385676223797384372e-2;
const A158: f64 = -5.49237485713909884646569340306e-2;
const A1511: f64 = -1.08347328697249322858509316994e-4;
const A1512: f64 = 3.82571090835658412954920192323e-4;
const A1513: f64 = -3.40465008687404560802977114492e-4;
const A1514: f64 = 1.41312443674632500278074618366e-1;
const A161: f64 = -4.28896301583791923408573538692e-1;
const A166: f64 = -4.69762141536116384314449447206e0;
const A167: f64 = 7.68342119606259904184240953878e0;
const A168: f64 = 4.06898981839711007970213554331e0;
const A169: f64 = 3.56727187455281109270669543021e-1;
const A1613: f64 = -1.39902416515901462129418009734e-3;
const A1614: f64 = 2.9475147891527723389556272149e0;
const A1615: f64 = -9.15095847217987001081870187138e0;
const D41: f64 = -0.84289382761090128651353491142e+01;
const D46: f64 = 0.56671495351937776962531783590e+00;
const D47: f64 = -0.30689499459498916912797304727e+01;
const D48: f64 = 0.23846676565120698287728149680e+01;
const D49: f64 = 0.21170345824450282767155149946e+01;
const D410: f64 = -0.87139158377797299206789907490e+00;
const D411: f64 = 0.22404374302607882758541771650e+01;
const D412: f64 = 0.63157877876946881815570249290e+00;
const D413: f64 = -0.88990336451333310820698117400e-01;
const D414: f64 = 0.18148505520854727256656404962e+02;
const D415: f64 = -0.91946323924783554000451984436e+01;
const D416: f64 = -0.44360363875948939664310572000e+01;
const D51: f64 = 0.10427508642579134603413151009e+02;
const D56: f64 = 0.24228349177525818288430175319e+03;
const D57: f64 = 0.16520045171727028198505394887e+03;
const D58: f64 = -0.37454675472269020279518312152e+03;
const D59: f64 = -0.22113666853125306036270938578e+02;
const D510: f64 = 0.77334326684722638389603898808e+01;
const D511: f64 = -0.30674084731089398182061213626e+02;
const D512: f64 = -0.93321305264302278729567221706e+01;
const D513: f64 = 0.15697238121770843886131091075e+02;
const D514: f64 = -0.31139403219565177677282850411e+02;
const D515: f64 = -0.93529243588444783865713862664e+01;
const D516: f64 = 0.35816841486394083752465898540e+02;
const D61: f64 = 0.19985053242002433820987653617e+02;
const D66: f64 = -0.38703730874935176555105901742e+03;
const D67: f64 = -0.18917813819516756882830838328e+03;
const D68: f64 = 0.52780815920542364900561016686e+03;
const D69: f64 = -0.11573902539959630126141871134e+02;
const D610: f64 = 0.68812326946963000169666922661e+01;
const D611: f64 = -0.10006050966910838403183860980e+01;
const D612: f64 = 0.77771377980534432092869265740e+00;
const D613: f64 = -0.27782057523535084065932004339e+01;
const D614: f64 = -0.60196695231264120758267380846e+02;
const D615: f64 = 0.84320405506677161018159903784e+02;
const D616: f64 = 0.11992291136182789328035130030e+02;
const D71: f64 = -0.25693933462703749003312586129e+02;
const D76: f64 = -0.15418974869023643374053993627e+03;
const D77: f64 = -0.23152937917604549567536039109e+03;
const D78: f64 = 0.35763911791061412378285349910e+03;
const D79: f64 = 0.93405324183624310003907691704e+02;
const D710: f64 = -0.37458323136451633156875139351e+02;
const D711: f64 = 0.10409964950896230045147246184e+03;
const D712: f64 = 0.29840293426660503123344363579e+02;
const D713: f64 = -0.43533456590011143754432175058e+02;
const D714: f64 = 0.96324553959188282948394950600e+02;
const D715: f64 = -0.39177261675615439165231486172e+02;
const D716: f64 = -0.14972683625798562581422125276e+03;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_dense_output() {
        let outs: Vec<f64> = (0..=200).map(|i| i as f64 * 0.05).collect();
        let (ys, stats) = Dop853::default().solve(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, [1.0, 0.0], &outs).unwrap();
        for (t, y) in outs.iter().zip(&ys) {
            assert!((y[0] - t.cos()).abs() < 1e-11, "t={t}");
            assert!((y[1] + t.sin()).abs() < 1e-11, "t={t}");
        }
        assert!(stats.accepted > 0);
    }

    #[test]
    fn exponential_decay_relative_accuracy() {
        let outs = [1.0, 10.0, 50.0];
        let (ys, _) = Dop853::default().solve(|_, y: &[f64; 1]| [-y[0]], 0.0, [1.0], &outs).unwrap();
        for (t, y) in outs.iter().zip(&ys) {
            assert!((y[0] / (-t).exp() - 1.0).abs() < 1e-10, "t={t}: {}", y[0]);
        }
    }

    #[test]
    fn outputs_at_start_return_initial_state() {
        let (ys, stats) = Dop853::default().solve(|_, y: &[f64; 1]| [y[0]], 2.0, [3.0], &[2.0, 2.0]).unwrap();
        assert_eq!(ys, vec![[3.0], [3.0]]);
        assert_eq!(stats.accepted, 0);
    }

    #[test]
    fn unsorted_outputs_rejected() {
        assert!(Dop853::default().solve(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], &[1.0, 0.5]).is_err());
    }

    #[test]
    fn blowup_reports_failure() {
        // y' = y² from y(0) = 1 blows up at t = 1
        let r = Dop853::default().solve(|_, y: &[f64; 1]| [y[0] * y[0]], 0.0, [1.0], &[2.0]);
        assert!(r.is_err());
    }
}
