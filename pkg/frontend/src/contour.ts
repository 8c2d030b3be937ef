/**
 * Marching-squares contour extraction on a tensor-product grid.
 *
 * Cells are scanned in (i, j) order and each produces at most two line
 * segments per level, with crossing points linearly interpolated along
 * cell edges.  Output order is fully determined by the input, so
 * downstream rendering is reproducible byte for byte.
 */

export interface Segment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

/** Interpolated crossing of `level` between (ca, a) and (cb, b). */
function cross(level: number, ca: number, a: number, cb: number, b: number): number {
  const t = (level - a) / (b - a);
  return ca + t * (cb - ca);
}

/**
 * Segments of the iso-contour f = level.
 *
 * `f` is indexed [i][j] on the axes `x` (length nx) and `y` (ny).
 * Nodes with f exactly at the level count as above, so a constant field
 * at the level produces no segments.
 */
export function contourSegments(
  x: number[],
  y: number[],
  f: number[][],
  level: number,
): Segment[] {
  const segs: Segment[] = [];
  for (let i = 0; i < x.length - 1; i++) {
    for (let j = 0; j < y.length - 1; j++) {
      const f00 = f[i][j];
      const f10 = f[i + 1][j];
      const f11 = f[i + 1][j + 1];
      const f01 = f[i][j + 1];
      let index = 0;
      if (f00 >= level) index |= 1;
      if (f10 >= level) index |= 2;
      if (f11 >= level) index |= 4;
      if (f01 >= level) index |= 8;
      if (index === 0 || index === 15) continue;

      // Edge crossing coordinates, computed lazily per case.
      const bottom = (): [number, number] => [
        cross(level, x[i], f00, x[i + 1], f10),
        y[j],
      ];
      const right = (): [number, number] => [
        x[i + 1],
        cross(level, y[j], f10, y[j + 1], f11),
      ];
      const top = (): [number, number] => [
        cross(level, x[i], f01, x[i + 1], f11),
        y[j + 1],
      ];
      const left = (): [number, number] => [
        x[i],
        cross(level, y[j], f00, y[j + 1], f01),
      ];

      const emit = (a: [number, number], b: [number, number]) =>
        segs.push({ x1: a[0], y1: a[1], x2: b[0], y2: b[1] });

      switch (index) {
        case 1:
        case 14:
          emit(left(), bottom());
          break;
        case 2:
        case 13:
          emit(bottom(), right());
          break;
        case 3:
        case 12:
          emit(left(), right());
          break;
        case 4:
        case 11:
          emit(right(), top());
          break;
        case 6:
        case 9:
          emit(bottom(), top());
          break;
        case 7:
        case 8:
          emit(left(), top());
          break;
        case 5:
        case 10: {
          // Saddle: disambiguate with the cell-center average.  When
          // the center sits with the (f10, f01) pair the contours pass
          // left-bottom and right-top; otherwise the other diagonal.
          const center = 0.25 * (f00 + f10 + f11 + f01);
          const joined = (center >= level) === (index === 10);
          if (joined) {
            emit(left(), bottom());
            emit(right(), top());
          } else {
            emit(left(), top());
            emit(bottom(), right());
          }
          break;
        }
      }
    }
  }
  return segs;
}
