/** Shared types for the puzzle documents and server responses. */

export interface LayoutEntry {
  pos: [number, number];
  polygon?: [number, number][];
}

export interface BoardDesign {
  points: number[];
  lines: number[][];
  classes: Record<string, number[]>;
}

export interface BoardDoc {
  schema: string;
  name: string;
  design: BoardDesign;
}

export interface PuzzleDoc {
  schema: string;
  id: string;
  board: BoardDoc;
  warp_k: number;
  symbols: string[];
  clues: Record<string, string>;
  layout: Record<string, LayoutEntry>;
}

export interface PuzzleSummary {
  id: string;
  points: number;
  clues: number;
  symbols: string[];
  warp_k: number;
  board: string;
}

export interface Violation {
  line: number;
  class: string | null;
  points: number[];
  symbol: string;
  count: number;
  max: number;
}

export interface CheckResult {
  complete: boolean;
  classification: string;
}
