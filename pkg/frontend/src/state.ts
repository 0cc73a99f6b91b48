/** Play state and its pure transitions.
 *
 * The client never decides completion on its own: entries update the
 * local state immediately, but violations come back from /validate and
 * the success banner only appears after /check-complete confirms.
 */

import type { CheckResult, PuzzleDoc, Violation } from './types';

export interface PlayState {
  puzzle: PuzzleDoc;
  /** user entries, disjoint from the fixed clues */
  entries: Record<number, string>;
  /** points filled via hints (rendered differently) */
  hinted: number[];
  selection: number | null;
  violations: Violation[];
  /** true only after the server confirms */
  complete: boolean;
  message: string;
}

export function newGame(puzzle: PuzzleDoc): PlayState {
  return {
    puzzle,
    entries: {},
    hinted: [],
    selection: null,
    violations: [],
    complete: false,
    message: '',
  };
}

export function cluePoints(state: PlayState): Set<number> {
  return new Set(Object.keys(state.puzzle.clues).map(Number));
}

export function isClue(state: PlayState, point: number): boolean {
  return Object.prototype.hasOwnProperty.call(state.puzzle.clues, String(point));
}

export function symbolAt(state: PlayState, point: number): string | undefined {
  return state.puzzle.clues[String(point)] ?? state.entries[point];
}

export function select(state: PlayState, point: number | null): PlayState {
  if (point !== null && isClue(state, point)) {
    return { ...state, selection: null };
  }
  return { ...state, selection: point };
}

/** Record a symbol at a point; clues are immutable and entries never
 * overwrite them. Passing null clears the entry. */
export function enterSymbol(
  state: PlayState,
  point: number,
  symbol: string | null,
): PlayState {
  if (isClue(state, point)) return state;
  if (symbol !== null && !state.puzzle.symbols.includes(symbol)) return state;
  const entries = { ...state.entries };
  if (symbol === null) {
    delete entries[point];
  } else {
    entries[point] = symbol;
  }
  const hinted = state.hinted.filter((p) => p !== point);
  return { ...state, entries, hinted, complete: false };
}

export function applyHint(state: PlayState, point: number, symbol: string): PlayState {
  const next = enterSymbol(state, point, symbol);
  if (next.entries[point] !== symbol) return next;
  return { ...next, hinted: [...next.hinted, point] };
}

export function applyValidation(state: PlayState, violations: Violation[]): PlayState {
  return { ...state, violations };
}

export function applyCheck(state: PlayState, result: CheckResult): PlayState {
  return {
    ...state,
    complete: result.complete,
    message: result.complete
      ? 'Solved! The server confirms a valid completion.'
      : state.message,
  };
}

export function allFilled(state: PlayState): boolean {
  const points = state.puzzle.board.design.points;
  return points.every((p) => symbolAt(state, p) !== undefined);
}

/** Points sitting on at least one violated line (for highlighting). */
export function violatedPoints(state: PlayState): Set<number> {
  const out = new Set<number>();
  for (const violation of state.violations) {
    for (const p of violation.points) out.add(p);
  }
  return out;
}

export function violatedLines(state: PlayState): Set<number> {
  return new Set(state.violations.map((v) => v.line));
}

/** Monotone counter so that only the latest in-flight response lands. */
export class LatestWins {
  private counter = 0;

  next(): number {
    this.counter += 1;
    return this.counter;
  }

  isCurrent(token: number): boolean {
    return token === this.counter;
  }
}
