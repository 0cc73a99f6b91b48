import type { PuzzleDoc } from '../src/types';

/** A 2x2 grid puzzle: points 0..3, rows {0,1},{2,3}, columns {0,2},{1,3}. */
export function tinyPuzzle(): PuzzleDoc {
  return {
    schema: 'latinboards.puzzle/1',
    id: 'tiny',
    board: {
      schema: 'latinboards.board/1',
      name: 'tiny-grid',
      design: {
        points: [0, 1, 2, 3],
        lines: [
          [0, 1],
          [2, 3],
          [0, 2],
          [1, 3],
        ],
        classes: { H: [0, 1], V: [2, 3] },
      },
    },
    warp_k: 1,
    symbols: ['1', '2'],
    clues: { '0': '1' },
    layout: {
      '0': { pos: [0.5, 1.5], polygon: [[0, 1], [1, 1], [1, 2], [0, 2]] },
      '1': { pos: [1.5, 1.5], polygon: [[1, 1], [2, 1], [2, 2], [1, 2]] },
      '2': { pos: [0.5, 0.5], polygon: [[0, 0], [1, 0], [1, 1], [0, 1]] },
      '3': { pos: [1.5, 0.5] },
    },
  };
}
