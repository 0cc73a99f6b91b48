/** DOM wiring: puzzle picker, SVG board, symbol palette, hint button. */

import { Api, ApiError } from './api';
import {
  LatestWins,
  PlayState,
  allFilled,
  applyCheck,
  applyHint,
  applyValidation,
  enterSymbol,
  newGame,
  select,
} from './state';
import { buildScene, cellClasses, polygonPoints } from './render';

const SVG_NS = 'http://www.w3.org/2000/svg';

class App {
  private api = new Api();
  private state: PlayState | null = null;
  private validations = new LatestWins();
  private board = document.getElementById('board') as unknown as SVGSVGElement;
  private palette = document.getElementById('palette')!;
  private status = document.getElementById('status')!;
  private picker = document.getElementById('picker') as HTMLSelectElement;

  async start() {
    const puzzles = await this.api.listPuzzles();
    this.picker.innerHTML = '';
    for (const p of puzzles) {
      const option = document.createElement('option');
      option.value = p.id;
      option.textContent = `${p.id} (${p.clues}/${p.points} clues)`;
      this.picker.appendChild(option);
    }
    this.picker.addEventListener('change', () => this.load(this.picker.value));
    document.getElementById('hint')!.addEventListener('click', () => this.hint());
    document.addEventListener('keydown', (ev) => this.onKey(ev));
    if (puzzles.length) await this.load(puzzles[0].id);
  }

  private async load(id: string) {
    try {
      const doc = await this.api.loadPuzzle(id);
      this.state = newGame(doc);
      this.renderPalette();
      this.render();
      this.say(`Loaded ${id}.`);
    } catch (err) {
      this.say(`Could not load ${id}: ${describe(err)}`, true);
    }
  }

  private say(text: string, isError = false) {
    this.status.textContent = text;
    this.status.className = isError ? 'error' : '';
  }

  private update(state: PlayState) {
    this.state = state;
    this.render();
  }

  private async afterEntry() {
    if (!this.state) return;
    const state = this.state;
    const token = this.validations.next();
    try {
      const violations = await this.api.validate(state.puzzle.id, state.entries);
      if (!this.validations.isCurrent(token) || this.state !== state) return;
      let next = applyValidation(state, violations);
      if (violations.length === 0 && allFilled(next)) {
        const result = await this.api.checkComplete(next.puzzle.id, next.entries);
        if (!this.validations.isCurrent(token)) return;
        next = applyCheck(next, result);
        if (result.complete) this.say(next.message);
      }
      this.update(next);
    } catch (err) {
      this.say(describe(err), true);
    }
  }

  private enter(symbol: string | null) {
    if (!this.state || this.state.selection === null) return;
    const next = enterSymbol(this.state, this.state.selection, symbol);
    if (next !== this.state) {
      this.update(next);
      void this.afterEntry();
    }
  }

  private async hint() {
    if (!this.state) return;
    const state = this.state;
    const point = state.selection;
    if (point === null) {
      this.say('Select a cell first.');
      return;
    }
    try {
      const symbol = await this.api.hint(state.puzzle.id, point);
      if (this.state !== state) return;
      this.update(applyHint(state, point, symbol));
      void this.afterEntry();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.say('This puzzle has no unique completion, so hints are disabled.', true);
      } else {
        this.say(describe(err), true);
      }
    }
  }

  private onKey(ev: KeyboardEvent) {
    if (!this.state) return;
    if (ev.key === 'Backspace' || ev.key === 'Delete') {
      this.enter(null);
      ev.preventDefault();
      return;
    }
    if (this.state.puzzle.symbols.includes(ev.key)) {
      this.enter(ev.key);
    }
  }

  private renderPalette() {
    if (!this.state) return;
    this.palette.innerHTML = '';
    for (const symbol of this.state.puzzle.symbols) {
      const button = document.createElement('button');
      button.textContent = symbol;
      button.addEventListener('click', () => this.enter(symbol));
      this.palette.appendChild(button);
    }
    const clear = document.createElement('button');
    clear.textContent = 'x';
    clear.title = 'clear cell';
    clear.addEventListener('click', () => this.enter(null));
    this.palette.appendChild(clear);
  }

  private render() {
    if (!this.state) return;
    const scene = buildScene(this.state);
    const [x, y, w, h] = scene.viewBox;
    this.board.setAttribute('viewBox', `${x} ${-y - h} ${w} ${h}`);
    this.board.innerHTML = '';
    for (const cell of scene.cells) {
      const group = document.createElementNS(SVG_NS, 'g');
      group.setAttribute('class', cellClasses(cell));
      const polygon = document.createElementNS(SVG_NS, 'polygon');
      polygon.setAttribute('points', polygonPoints(cell));
      group.appendChild(polygon);
      if (cell.symbol !== null) {
        const text = document.createElementNS(SVG_NS, 'text');
        text.setAttribute('x', String(cell.center[0]));
        text.setAttribute('y', String(-cell.center[1]));
        text.setAttribute('dy', '0.1');
        text.textContent = cell.symbol;
        group.appendChild(text);
      }
      if (!cell.isClue) {
        group.addEventListener('click', () => {
          this.update(select(this.state!, cell.point));
        });
      }
      this.board.appendChild(group);
    }
    const banner = document.getElementById('banner')!;
    banner.hidden = !scene.complete;
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.message} (HTTP ${err.status})`;
  return err instanceof Error ? err.message : String(err);
}

new App().start().catch((err) => {
  document.getElementById('status')!.textContent = describe(err);
});
