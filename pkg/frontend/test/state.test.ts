import { describe, expect, it } from 'vitest';

import {
  LatestWins,
  allFilled,
  applyCheck,
  applyHint,
  applyValidation,
  enterSymbol,
  isClue,
  newGame,
  select,
  symbolAt,
  violatedLines,
  violatedPoints,
} from '../src/state';
import { tinyPuzzle } from './fixtures';

describe('play state', () => {
  it('starts with clues locked and nothing entered', () => {
    const state = newGame(tinyPuzzle());
    expect(isClue(state, 0)).toBe(true);
    expect(symbolAt(state, 0)).toBe('1');
    expect(symbolAt(state, 1)).toBeUndefined();
    expect(state.complete).toBe(false);
  });

  it('never lets entries overwrite clues', () => {
    const state = newGame(tinyPuzzle());
    const next = enterSymbol(state, 0, '2');
    expect(next).toBe(state);
    expect(symbolAt(next, 0)).toBe('1');
  });

  it('records, replaces and clears entries', () => {
    let state = newGame(tinyPuzzle());
    state = enterSymbol(state, 1, '2');
    expect(symbolAt(state, 1)).toBe('2');
    state = enterSymbol(state, 1, '1');
    expect(symbolAt(state, 1)).toBe('1');
    state = enterSymbol(state, 1, null);
    expect(symbolAt(state, 1)).toBeUndefined();
  });

  it('rejects symbols outside the palette', () => {
    const state = newGame(tinyPuzzle());
    expect(enterSymbol(state, 1, '9')).toBe(state);
  });

  it('selection skips clue cells', () => {
    let state = newGame(tinyPuzzle());
    state = select(state, 1);
    expect(state.selection).toBe(1);
    state = select(state, 0);
    expect(state.selection).toBeNull();
  });

  it('tracks violated lines and points from validation', () => {
    let state = newGame(tinyPuzzle());
    state = enterSymbol(state, 1, '1'); // duplicates the clue on row {0,1}
    state = applyValidation(state, [
      { line: 0, class: 'H', points: [0, 1], symbol: '1', count: 2, max: 1 },
    ]);
    expect(violatedLines(state)).toEqual(new Set([0]));
    expect(violatedPoints(state)).toEqual(new Set([0, 1]));
  });

  it('entering a symbol resets the confirmed-complete flag', () => {
    let state = newGame(tinyPuzzle());
    state = applyCheck(state, { complete: true, classification: 'subcritical' });
    expect(state.complete).toBe(true);
    state = enterSymbol(state, 1, '2');
    expect(state.complete).toBe(false);
  });

  it('completion comes only from the server check', () => {
    let state = newGame(tinyPuzzle());
    state = enterSymbol(state, 1, '2');
    state = enterSymbol(state, 2, '2');
    state = enterSymbol(state, 3, '1');
    expect(allFilled(state)).toBe(true);
    expect(state.complete).toBe(false); // filled is not solved
    state = applyCheck(state, { complete: true, classification: 'subcritical' });
    expect(state.complete).toBe(true);
  });

  it('hints mark the cell and behave like entries', () => {
    let state = newGame(tinyPuzzle());
    state = applyHint(state, 1, '2');
    expect(state.hinted).toContain(1);
    expect(symbolAt(state, 1)).toBe('2');
    state = enterSymbol(state, 1, '1'); // manual overwrite clears hint mark
    expect(state.hinted).not.toContain(1);
  });

  it('latest-wins tokens invalidate stale responses', () => {
    const seq = new LatestWins();
    const first = seq.next();
    const second = seq.next();
    expect(seq.isCurrent(first)).toBe(false);
    expect(seq.isCurrent(second)).toBe(true);
  });
});
