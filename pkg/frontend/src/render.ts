/** Pure scene construction: play state -> cell/glyph descriptions.
 *
 * Cells come straight from the puzzle layout polygons, so squares,
 * triangles, hexagon strips and unfolded polyhedra all render through
 * the same code path.
 */

import type { PlayState } from './state';
import { isClue, symbolAt, violatedPoints } from './state';

export interface CellScene {
  point: number;
  polygon: [number, number][];
  center: [number, number];
  symbol: string | null;
  isClue: boolean;
  isHinted: boolean;
  isSelected: boolean;
  isViolated: boolean;
}

export interface Scene {
  cells: CellScene[];
  viewBox: [number, number, number, number];
  complete: boolean;
  message: string;
}

const PAD = 0.15;

export function buildScene(state: PlayState): Scene {
  const layout = state.puzzle.layout;
  const bad = violatedPoints(state);
  const hinted = new Set(state.hinted);
  const cells: CellScene[] = [];
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const point of state.puzzle.board.design.points) {
    const entry = layout[String(point)];
    if (!entry) continue;
    const polygon = entry.polygon ?? squareAround(entry.pos);
    for (const [x, y] of polygon) {
      minX = Math.min(minX, x);
      maxX = Math.max(maxX, x);
      minY = Math.min(minY, y);
      maxY = Math.max(maxY, y);
    }
    cells.push({
      point,
      polygon,
      center: entry.pos,
      symbol: symbolAt(state, point) ?? null,
      isClue: isClue(state, point),
      isHinted: hinted.has(point),
      isSelected: state.selection === point,
      isViolated: bad.has(point),
    });
  }
  cells.sort((a, b) => a.point - b.point);
  return {
    cells,
    viewBox: [minX - PAD, minY - PAD, maxX - minX + 2 * PAD, maxY - minY + 2 * PAD],
    complete: state.complete,
    message: state.message,
  };
}

function squareAround(pos: [number, number]): [number, number][] {
  const r = 0.4;
  const [x, y] = pos;
  return [
    [x - r, y - r],
    [x + r, y - r],
    [x + r, y + r],
    [x - r, y + r],
  ];
}

export function cellClasses(cell: CellScene): string {
  const classes = ['cell'];
  if (cell.isClue) classes.push('clue');
  if (cell.isHinted) classes.push('hinted');
  if (cell.isSelected) classes.push('selected');
  if (cell.isViolated) classes.push('violated');
  return classes.join(' ');
}

export function polygonPoints(cell: CellScene): string {
  return cell.polygon.map(([x, y]) => `${x},${-y}`).join(' ');
}
