/**
 * Portable log and exp that give identical doubles in every language.
 *
 * The span scorer promises that independent implementations reproduce each
 * other's scores bit for bit. Platform math libraries disagree about the
 * last ulp of log and exp, so the scorer never calls them. These are fixed
 * ports of the classic Sun fdlibm algorithms: argument reduction plus a
 * minimax polynomial, built only from +, -, *, / and bit surgery, all of
 * which IEEE 754 defines exactly. The primary implementation carries the
 * same two functions line for line; keep them in lockstep.
 */

const dv = new DataView(new ArrayBuffer(8));

function highWord(x: number): number {
  dv.setFloat64(0, x);
  return dv.getUint32(0);
}

function lowWord(x: number): number {
  dv.setFloat64(0, x);
  return dv.getUint32(4);
}

function withHighWord(x: number, hi: number): number {
  dv.setFloat64(0, x);
  dv.setUint32(0, hi >>> 0);
  return dv.getFloat64(0);
}

function fromWords(hi: number, lo: number): number {
  dv.setUint32(0, hi >>> 0);
  dv.setUint32(4, lo >>> 0);
  return dv.getFloat64(0);
}

const TWO54 = 1.8014398509481984e16;
const LN2_HI = 6.93147180369123816490e-1;
const LN2_LO = 1.90821492927058770002e-10;
const LG1 = 6.66666666666673513e-1;
const LG2 = 3.999999999940941908e-1;
const LG3 = 2.857142874366239149e-1;
const LG4 = 2.222219843214978396e-1;
const LG5 = 1.818357216161805012e-1;
const LG6 = 1.531383769920937332e-1;
const LG7 = 1.479819860511658591e-1;

/** Natural log, rounded exactly like the reference algorithm. NaN for x < 0, -Infinity for 0. */
export function portableLog(x: number): number {
  if (x !== x) return x;
  let hx = highWord(x);
  const lx = lowWord(x);
  let k = 0;
  if (hx >= 0x80000000) return NaN; // sign bit set: negative or -0 (log(-0) shares the NaN door)
  if (hx < 0x00100000) {
    // zero or subnormal
    if ((hx | lx) === 0) return -Infinity;
    k -= 54;
    x *= TWO54;
    hx = highWord(x);
  }
  if (hx >= 0x7ff00000) return x + x; // +inf
  k += (hx >> 20) - 1023;
  hx &= 0x000fffff;
  let i = (hx + 0x95f64) & 0x100000;
  x = withHighWord(x, hx | (i ^ 0x3ff00000)); // normalize to [sqrt(2)/2, sqrt(2))
  k += i >> 20;
  const f = x - 1.0;
  if ((0x000fffff & (2 + hx)) < 3) {
    // |f| < 2**-20
    if (f === 0.0) {
      if (k === 0) return 0.0;
      const dk = k;
      return dk * LN2_HI + dk * LN2_LO;
    }
    const r = f * f * (0.5 - 0.33333333333333333 * f);
    if (k === 0) return f - r;
    const dk = k;
    return dk * LN2_HI - ((r - dk * LN2_LO) - f);
  }
  const s = f / (2.0 + f);
  const dk = k;
  const z = s * s;
  i = hx - 0x6147a;
  const w = z * z;
  const j = 0x6b851 - hx;
  const t1 = w * (LG2 + w * (LG4 + w * LG6));
  const t2 = z * (LG1 + w * (LG3 + w * (LG5 + w * LG7)));
  i |= j;
  const r = t2 + t1;
  if (i > 0) {
    const hfsq = 0.5 * f * f;
    if (k === 0) return f - (hfsq - s * (hfsq + r));
    return dk * LN2_HI - ((hfsq - (s * (hfsq + r) + dk * LN2_LO)) - f);
  }
  if (k === 0) return f - s * (f - r);
  return dk * LN2_HI - ((s * (f - r) - dk * LN2_LO) - f);
}

const HALF = [0.5, -0.5];
const HUGE = 1.0e300;
const TWOM1000 = 9.3326361850321887899e-302;
const TWO1023 = 8.98846567431157953865e307;
const O_THRESHOLD = 7.09782712893383973096e2;
const U_THRESHOLD = -7.4513321910194110842e2;
const LN2HI = [6.93147180369123816490e-1, -6.93147180369123816490e-1];
const LN2LO = [1.90821492927058770002e-10, -1.90821492927058770002e-10];
const INVLN2 = 1.44269504088896338700e0;
const P1 = 1.66666666666666019037e-1;
const P2 = -2.77777777770155933842e-3;
const P3 = 6.61375632143793436117e-5;
const P4 = -1.65339022054652515390e-6;
const P5 = 4.13813679705723846039e-8;

/** e**x, rounded exactly like the reference algorithm. */
export function portableExp(x: number): number {
  let hi = 0.0;
  let lo = 0.0;
  let k = 0;
  let hx = highWord(x);
  const lx = lowWord(x);
  const xsb = (hx >>> 31) & 1;
  hx &= 0x7fffffff;

  if (hx >= 0x40862e42) {
    // |x| >= 709.78...
    if (hx >= 0x7ff00000) {
      if (((hx & 0xfffff) | lx) !== 0) return x + x; // NaN
      return xsb === 0 ? x : 0.0; // exp(+inf), exp(-inf)
    }
    if (x > O_THRESHOLD) return HUGE * HUGE; // overflow to +inf
    if (x < U_THRESHOLD) return TWOM1000 * TWOM1000; // underflow to 0
  }

  if (hx > 0x3fd62e42) {
    // |x| > 0.5 ln 2: reduce by k ln 2
    if (hx < 0x3ff0a2b2) {
      // |x| < 1.5 ln 2
      hi = x - LN2HI[xsb];
      lo = LN2LO[xsb];
      k = 1 - xsb - xsb;
    } else {
      k = Math.trunc(INVLN2 * x + HALF[xsb]);
      const t = k;
      hi = x - t * LN2HI[0]; // t * ln2_hi is exact at this magnitude
      lo = t * LN2LO[0];
    }
    x = hi - lo;
  } else if (hx < 0x3e300000) {
    // |x| < 2**-28
    if (HUGE + x > 1.0) return 1.0 + x;
  } else {
    k = 0;
  }

  const t = x * x;
  const c = x - t * (P1 + t * (P2 + t * (P3 + t * (P4 + t * P5))));
  if (k === 0) return 1.0 - ((x * c) / (c - 2.0) - x);
  const y = 1.0 - ((lo - (x * c) / (2.0 - c)) - hi);
  if (k >= -1021) {
    if (k === 1024) return y * 2.0 * TWO1023;
    return y * fromWords(0x3ff00000 + (k << 20), 0);
  }
  return y * fromWords(0x3ff00000 + ((k + 1000) << 20), 0) * TWOM1000;
}
