//! Coefficient tables for the bic-II barycenter sextics.
//!
//! Each term is `(i, j, pR, pr, pd, c)` for `c · R^pR r^pr d^pd · x^i y^j`.

pub(crate) type SextTerm = (u32, u32, u32, u32, u32, f64);

/// The sextic as stated in closed form, expanded term by term.
pub(crate) const STATED_X2: &[SextTerm] = &[
    (0, 0, 2, 4, 12, -144.0),
    (0, 0, 2, 6, 10, 1536.0),
    (0, 0, 2, 8, 8, -5632.0),
    (0, 0, 2, 10, 6, 8192.0),
    (0, 0, 2, 12, 4, -4096.0),
    (0, 0, 4, 4, 10, 576.0),
    (0, 0, 4, 6, 8, -2304.0),
    (0, 0, 4, 8, 6, 5120.0),
    (0, 0, 4, 10, 4, -4096.0),
    (0, 0, 6, 4, 8, -864.0),
    (0, 0, 6, 8, 4, 512.0),
    (0, 0, 8, 4, 6, 576.0),
    (0, 0, 8, 6, 4, 768.0),
    (0, 0, 10, 4, 4, -144.0),
    (0, 2, 0, 4, 8, 144.0),
    (0, 2, 0, 6, 6, -1152.0),
    (0, 2, 0, 8, 4, 2304.0),
    (0, 2, 2, 0, 10, -324.0),
    (0, 2, 2, 2, 8, 2808.0),
    (0, 2, 2, 4, 6, -5760.0),
    (0, 2, 2, 8, 2, -4608.0),
    (0, 2, 4, 0, 8, 1296.0),
    (0, 2, 4, 2, 6, -1944.0),
    (0, 2, 4, 4, 4, 4176.0),
    (0, 2, 4, 6, 2, 19584.0),
    (0, 2, 6, 0, 6, -1944.0),
    (0, 2, 6, 2, 4, -4536.0),
    (0, 2, 6, 4, 2, -14112.0),
    (0, 2, 8, 0, 4, 1296.0),
    (0, 2, 8, 2, 2, 3672.0),
    (0, 2, 10, 0, 2, -324.0),
    (0, 4, 0, 0, 6, 324.0),
    (0, 4, 0, 2, 4, -1944.0),
    (0, 4, 0, 4, 2, 2592.0),
    (0, 4, 2, 0, 4, 5103.0),
    (0, 4, 2, 2, 2, -10368.0),
    (0, 4, 2, 4, 0, -1296.0),
    (0, 4, 4, 0, 2, 3402.0),
    (0, 4, 4, 2, 0, 648.0),
    (0, 4, 6, 0, 0, -81.0),
    (0, 6, 0, 0, 0, 729.0),
    (1, 0, 2, 2, 11, 432.0),
    (1, 0, 2, 4, 9, -5184.0),
    (1, 0, 2, 6, 7, 10752.0),
    (1, 0, 2, 8, 5, 3072.0),
    (1, 0, 2, 10, 3, -12288.0),
    (1, 0, 4, 2, 9, -1728.0),
    (1, 0, 4, 4, 7, 6912.0),
    (1, 0, 4, 6, 5, -16896.0),
    (1, 0, 4, 8, 3, 6144.0),
    (1, 0, 6, 2, 7, 2592.0),
    (1, 0, 6, 4, 5, 1728.0),
    (1, 0, 6, 6, 3, 6144.0),
    (1, 0, 8, 2, 5, -1728.0),
    (1, 0, 8, 4, 3, -3456.0),
    (1, 0, 10, 2, 3, 432.0),
    (1, 2, 0, 2, 7, -432.0),
    (1, 2, 0, 6, 3, 6912.0),
    (1, 2, 2, 0, 7, -4212.0),
    (1, 2, 2, 2, 5, -4752.0),
    (1, 2, 2, 4, 3, 1728.0),
    (1, 2, 2, 6, 1, -6912.0),
    (1, 2, 4, 0, 5, 8748.0),
    (1, 2, 4, 2, 3, 8208.0),
    (1, 2, 4, 4, 1, 8640.0),
    (1, 2, 6, 0, 3, -4860.0),
    (1, 2, 6, 2, 1, -3024.0),
    (1, 2, 8, 0, 1, 324.0),
    (1, 4, 0, 0, 3, -4860.0),
    (1, 4, 0, 2, 1, 3888.0),
    (1, 4, 2, 0, 1, -3888.0),
    (2, 0, 0, 4, 8, 1296.0),
    (2, 0, 0, 6, 6, -3456.0),
    (2, 0, 0, 8, 4, 2304.0),
    (2, 0, 2, 0, 10, -324.0),
    (2, 0, 2, 2, 8, 7128.0),
    (2, 0, 2, 4, 6, -3456.0),
    (2, 0, 2, 6, 4, -9216.0),
    (2, 0, 2, 8, 2, -13824.0),
    (2, 0, 4, 0, 8, 1296.0),
    (2, 0, 4, 2, 6, -11016.0),
    (2, 0, 4, 4, 4, 13392.0),
    (2, 0, 4, 6, 2, 17280.0),
    (2, 0, 6, 0, 6, -1944.0),
    (2, 0, 6, 2, 4, 648.0),
    (2, 0, 6, 4, 2, -11232.0),
    (2, 0, 8, 0, 4, 1296.0),
    (2, 0, 8, 2, 2, 3240.0),
    (2, 0, 10, 0, 2, -324.0),
    (2, 2, 0, 0, 6, 3240.0),
    (2, 2, 0, 2, 4, 3888.0),
    (2, 2, 0, 4, 2, 10368.0),
    (2, 2, 2, 0, 4, -4698.0),
    (2, 2, 2, 2, 2, -20736.0),
    (2, 2, 2, 4, 0, -2592.0),
    (2, 2, 4, 0, 2, 10368.0),
    (2, 2, 4, 2, 0, 1296.0),
    (2, 2, 6, 0, 0, -162.0),
    (2, 4, 0, 0, 0, 2187.0),
    (3, 0, 0, 2, 7, -3888.0),
    (3, 0, 0, 6, 3, 6912.0),
    (3, 0, 2, 0, 7, -4212.0),
    (3, 0, 2, 2, 5, 2160.0),
    (3, 0, 2, 4, 3, -12096.0),
    (3, 0, 2, 6, 1, -6912.0),
    (3, 0, 4, 0, 5, 8748.0),
    (3, 0, 4, 2, 3, 4752.0),
    (3, 0, 4, 4, 1, 8640.0),
    (3, 0, 6, 0, 3, -4860.0),
    (3, 0, 6, 2, 1, -3024.0),
    (3, 0, 8, 0, 1, 324.0),
    (3, 2, 0, 0, 3, -1944.0),
    (3, 2, 0, 2, 1, 7776.0),
    (3, 2, 2, 0, 1, -7776.0),
    (4, 0, 0, 0, 6, 2916.0),
    (4, 0, 0, 2, 4, 5832.0),
    (4, 0, 0, 4, 2, 7776.0),
    (4, 0, 2, 0, 4, -9801.0),
    (4, 0, 2, 2, 2, -10368.0),
    (4, 0, 2, 4, 0, -1296.0),
    (4, 0, 4, 0, 2, 6966.0),
    (4, 0, 4, 2, 0, 648.0),
    (4, 0, 6, 0, 0, -81.0),
    (4, 2, 0, 0, 0, 2187.0),
    (5, 0, 0, 0, 3, 2916.0),
    (5, 0, 0, 2, 1, 3888.0),
    (5, 0, 2, 0, 1, -3888.0),
    (6, 0, 0, 0, 0, 729.0),
];

/// Eliminant of the barycenter parametrization against the circumcircle.
pub(crate) const RESULTANT_X2: &[SextTerm] = &[
    (0, 0, 2, 0, 12, -9.0),
    (0, 0, 2, 2, 10, 96.0),
    (0, 0, 2, 4, 8, -352.0),
    (0, 0, 2, 6, 6, 512.0),
    (0, 0, 2, 8, 4, -256.0),
    (0, 0, 4, 0, 10, 36.0),
    (0, 0, 4, 2, 8, -144.0),
    (0, 0, 4, 4, 6, 320.0),
    (0, 0, 4, 6, 4, -256.0),
    (0, 0, 6, 0, 8, -54.0),
    (0, 0, 6, 4, 4, 32.0),
    (0, 0, 8, 0, 6, 36.0),
    (0, 0, 8, 2, 4, 48.0),
    (0, 0, 10, 0, 4, -9.0),
    (0, 2, 0, 0, 12, 9.0),
    (0, 2, 0, 2, 10, -72.0),
    (0, 2, 0, 4, 8, 144.0),
    (0, 2, 2, 0, 10, -126.0),
    (0, 2, 2, 2, 8, 1152.0),
    (0, 2, 2, 4, 6, -2880.0),
    (0, 2, 2, 6, 4, 1152.0),
    (0, 2, 4, 0, 8, 414.0),
    (0, 2, 4, 2, 6, -1296.0),
    (0, 2, 4, 4, 4, 3024.0),
    (0, 2, 4, 6, 2, 1152.0),
    (0, 2, 6, 0, 6, -576.0),
    (0, 2, 6, 2, 4, -576.0),
    (0, 2, 6, 4, 2, -2016.0),
    (0, 2, 8, 0, 4, 369.0),
    (0, 2, 8, 2, 2, 792.0),
    (0, 2, 10, 0, 2, -90.0),
    (0, 4, 0, 0, 10, 162.0),
    (0, 4, 0, 2, 8, -648.0),
    (0, 4, 2, 0, 8, -729.0),
    (0, 4, 2, 2, 6, 5184.0),
    (0, 4, 2, 4, 4, -1296.0),
    (0, 4, 4, 0, 6, 1296.0),
    (0, 4, 4, 2, 4, -7776.0),
    (0, 4, 4, 4, 2, -2592.0),
    (0, 4, 6, 0, 4, -1134.0),
    (0, 4, 6, 2, 2, 2592.0),
    (0, 4, 6, 4, 0, -1296.0),
    (0, 4, 8, 0, 2, 486.0),
    (0, 4, 8, 2, 0, 648.0),
    (0, 4, 10, 0, 0, -81.0),
    (0, 6, 0, 0, 8, 729.0),
    (0, 6, 2, 0, 6, -2916.0),
    (0, 6, 4, 0, 4, 4374.0),
    (0, 6, 6, 0, 2, -2916.0),
    (0, 6, 8, 0, 0, 729.0),
    (1, 0, 2, 0, 11, 72.0),
    (1, 0, 2, 2, 9, -1104.0),
    (1, 0, 2, 4, 7, 3072.0),
    (1, 0, 2, 6, 5, -2304.0),
    (1, 0, 4, 0, 9, -288.0),
    (1, 0, 4, 2, 7, 1728.0),
    (1, 0, 4, 4, 5, -3456.0),
    (1, 0, 4, 6, 3, 1536.0),
    (1, 0, 6, 0, 7, 432.0),
    (1, 0, 6, 2, 5, -144.0),
    (1, 0, 6, 4, 3, 384.0),
    (1, 0, 8, 0, 5, -288.0),
    (1, 0, 8, 2, 3, -480.0),
    (1, 0, 10, 0, 3, 72.0),
    (1, 2, 0, 0, 11, -216.0),
    (1, 2, 0, 2, 9, 864.0),
    (1, 2, 2, 0, 9, 1080.0),
    (1, 2, 2, 2, 7, -10368.0),
    (1, 2, 2, 4, 5, 6912.0),
    (1, 2, 4, 0, 7, -2160.0),
    (1, 2, 4, 2, 5, 16416.0),
    (1, 2, 4, 4, 3, -3456.0),
    (1, 2, 6, 0, 5, 2160.0),
    (1, 2, 6, 2, 3, -5184.0),
    (1, 2, 6, 4, 1, 3456.0),
    (1, 2, 8, 0, 3, -1080.0),
    (1, 2, 8, 2, 1, -1728.0),
    (1, 2, 10, 0, 1, 216.0),
    (1, 4, 0, 0, 9, -1944.0),
    (1, 4, 2, 0, 7, 7776.0),
    (1, 4, 2, 2, 5, -3888.0),
    (1, 4, 4, 0, 5, -11664.0),
    (1, 4, 4, 2, 3, 7776.0),
    (1, 4, 6, 0, 3, 7776.0),
    (1, 4, 6, 2, 1, -3888.0),
    (1, 4, 8, 0, 1, -1944.0),
    (2, 0, 0, 0, 12, 81.0),
    (2, 0, 0, 2, 10, -216.0),
    (2, 0, 0, 4, 8, 144.0),
    (2, 0, 2, 0, 10, -522.0),
    (2, 0, 2, 2, 8, 5760.0),
    (2, 0, 2, 4, 6, -8640.0),
    (2, 0, 2, 6, 4, 1152.0),
    (2, 0, 4, 0, 8, 1278.0),
    (2, 0, 4, 2, 6, -9360.0),
    (2, 0, 4, 4, 4, 11088.0),
    (2, 0, 4, 6, 2, -1152.0),
    (2, 0, 6, 0, 6, -1512.0),
    (2, 0, 6, 2, 4, 2304.0),
    (2, 0, 6, 4, 2, -2592.0),
    (2, 0, 8, 0, 4, 873.0),
    (2, 0, 8, 2, 2, 1512.0),
    (2, 0, 10, 0, 2, -198.0),
    (2, 2, 0, 0, 10, 1944.0),
    (2, 2, 0, 2, 8, -1296.0),
    (2, 2, 2, 0, 8, -7938.0),
    (2, 2, 2, 2, 6, 18144.0),
    (2, 2, 2, 4, 4, -2592.0),
    (2, 2, 4, 0, 6, 12312.0),
    (2, 2, 4, 2, 4, -31104.0),
    (2, 2, 6, 0, 4, -8748.0),
    (2, 2, 6, 2, 2, 12960.0),
    (2, 2, 6, 4, 0, -2592.0),
    (2, 2, 8, 0, 2, 2592.0),
    (2, 2, 8, 2, 0, 1296.0),
    (2, 2, 10, 0, 0, -162.0),
    (2, 4, 0, 0, 8, 2187.0),
    (2, 4, 2, 0, 6, -8748.0),
    (2, 4, 4, 0, 4, 13122.0),
    (2, 4, 6, 0, 2, -8748.0),
    (2, 4, 8, 0, 0, 2187.0),
    (3, 0, 0, 0, 11, -648.0),
    (3, 0, 0, 2, 9, 864.0),
    (3, 0, 2, 0, 9, 2808.0),
    (3, 0, 2, 2, 7, -13824.0),
    (3, 0, 2, 4, 5, 6912.0),
    (3, 0, 4, 0, 7, -4752.0),
    (3, 0, 4, 2, 5, 23328.0),
    (3, 0, 4, 4, 3, -10368.0),
    (3, 0, 6, 0, 5, 3888.0),
    (3, 0, 6, 2, 3, -8640.0),
    (3, 0, 6, 4, 1, 3456.0),
    (3, 0, 8, 0, 3, -1512.0),
    (3, 0, 8, 2, 1, -1728.0),
    (3, 0, 10, 0, 1, 216.0),
    (3, 2, 0, 0, 9, -3888.0),
    (3, 2, 2, 0, 7, 15552.0),
    (3, 2, 2, 2, 5, -7776.0),
    (3, 2, 4, 0, 5, -23328.0),
    (3, 2, 4, 2, 3, 15552.0),
    (3, 2, 6, 0, 3, 15552.0),
    (3, 2, 6, 2, 1, -7776.0),
    (3, 2, 8, 0, 1, -3888.0),
    (4, 0, 0, 0, 10, 1782.0),
    (4, 0, 0, 2, 8, -648.0),
    (4, 0, 2, 0, 8, -7209.0),
    (4, 0, 2, 2, 6, 12960.0),
    (4, 0, 2, 4, 4, -1296.0),
    (4, 0, 4, 0, 6, 11016.0),
    (4, 0, 4, 2, 4, -23328.0),
    (4, 0, 4, 4, 2, 2592.0),
    (4, 0, 6, 0, 4, -7614.0),
    (4, 0, 6, 2, 2, 10368.0),
    (4, 0, 6, 4, 0, -1296.0),
    (4, 0, 8, 0, 2, 2106.0),
    (4, 0, 8, 2, 0, 648.0),
    (4, 0, 10, 0, 0, -81.0),
    (4, 2, 0, 0, 8, 2187.0),
    (4, 2, 2, 0, 6, -8748.0),
    (4, 2, 4, 0, 4, 13122.0),
    (4, 2, 6, 0, 2, -8748.0),
    (4, 2, 8, 0, 0, 2187.0),
    (5, 0, 0, 0, 9, -1944.0),
    (5, 0, 2, 0, 7, 7776.0),
    (5, 0, 2, 2, 5, -3888.0),
    (5, 0, 4, 0, 5, -11664.0),
    (5, 0, 4, 2, 3, 7776.0),
    (5, 0, 6, 0, 3, 7776.0),
    (5, 0, 6, 2, 1, -3888.0),
    (5, 0, 8, 0, 1, -1944.0),
    (6, 0, 0, 0, 8, 729.0),
    (6, 0, 2, 0, 6, -2916.0),
    (6, 0, 4, 0, 4, 4374.0),
    (6, 0, 6, 0, 2, -2916.0),
    (6, 0, 8, 0, 0, 729.0),
];
