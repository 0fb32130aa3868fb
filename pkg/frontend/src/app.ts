/** DOM wiring: a grid of orbitable candidate thumbnails per generation.
 *
 * The page is stateless beyond the session id kept in the URL hash, so a
 * reload resumes exactly where the session stands on the server. Failed
 * requests keep the current view and show a banner with a retry button.
 */

import { ApiError, SessionClient, StaleGenerationError } from "./api.js";
import { buildColorMap, ColorMap } from "./colors.js";
import { Camera, DEFAULT_CAMERA, renderToCanvas } from "./renderer.js";
import { Candidate, GenerationPayload } from "./types.js";

const THUMB_SIZE = 170;

type Action = () => Promise<void>;

export class App {
  private client: SessionClient;
  private colors: ColorMap = new Map();
  private payload: GenerationPayload | null = null;
  private root: HTMLElement;

  constructor(root: HTMLElement, client?: SessionClient) {
    this.root = root;
    this.client = client ?? new SessionClient("");
  }

  async boot(): Promise<void> {
    try {
      this.colors = buildColorMap(await this.client.getSchema());
    } catch (err) {
      this.showError(`could not load block schema: ${String(err)}`, () => this.boot());
      return;
    }
    const sessionId = location.hash.startsWith("#s=") ? location.hash.slice(3) : null;
    if (sessionId) {
      await this.run(() => this.resume(sessionId));
    } else {
      this.renderStartForm();
    }
  }

  private async resume(sessionId: string): Promise<void> {
    this.payload = await this.client.getGeneration(sessionId);
    this.renderGeneration();
  }

  private async start(seed: number, goal: string): Promise<void> {
    this.payload = await this.client.createSession({ seed, goal, min_size: 8 });
    location.hash = `#s=${this.payload.session_id}`;
    this.renderGeneration();
  }

  private async choose(index: number): Promise<void> {
    if (!this.payload) return;
    const { session_id, generation } = this.payload;
    this.payload = await this.client.submitChoice(session_id, generation, index);
    this.renderGeneration();
  }

  private async reroll(): Promise<void> {
    if (!this.payload) return;
    const { session_id, generation } = this.payload;
    this.payload = await this.client.reroll(session_id, generation);
    this.renderGeneration();
  }

  /** Run an action, routing failures into the retry banner. */
  private async run(action: Action): Promise<void> {
    try {
      await action();
    } catch (err) {
      if (err instanceof StaleGenerationError && this.payload) {
        // another tab advanced the session; re-sync instead of retrying
        const id = this.payload.session_id;
        this.showError("this generation was already answered; resyncing",
          () => this.resume(id));
        return;
      }
      const message = err instanceof ApiError && err.status === 0
        ? `network failure: ${err.message}`
        : String(err instanceof Error ? err.message : err);
      this.showError(message, action);
    }
  }

  // -- view --------------------------------------------------------------------

  private clear(): void {
    this.root.textContent = "";
  }

  private renderStartForm(): void {
    this.clear();
    const form = el("div", "start-form");
    form.append(el("h1", "", "interactive evolution"));
    const seedInput = document.createElement("input");
    seedInput.type = "number";
    seedInput.value = String(Math.floor(Math.random() * 100000));
    seedInput.id = "seed";
    const goalInput = document.createElement("input");
    goalInput.type = "text";
    goalInput.placeholder = "optional goal shown as a banner";
    goalInput.id = "goal";
    const button = el("button", "", "start session");
    button.addEventListener("click", () =>
      this.run(() => this.start(Number(seedInput.value), goalInput.value)));
    form.append(label("seed", seedInput), label("goal", goalInput), button);
    this.root.append(form);
  }

  renderGeneration(): void {
    const payload = this.payload;
    if (!payload) return;
    this.clear();

    const header = el("div", "header");
    header.append(el("span", "generation", `generation ${payload.generation}`));
    if (payload.goal) {
      header.append(el("span", "goal", payload.goal));
    }
    if (payload.reroll_available) {
      const reroll = el("button", "reroll", "reroll (all candidates filtered)");
      reroll.addEventListener("click", () => this.run(() => this.reroll()));
      header.append(reroll);
    }
    this.root.append(header);

    const grid = el("div", "grid");
    for (const candidate of payload.candidates) {
      grid.append(this.renderCandidate(candidate));
    }
    this.root.append(grid);
  }

  private renderCandidate(candidate: Candidate): HTMLElement {
    const cell = el("div", candidate.displayable ? "candidate" : "candidate filtered");
    const canvas = document.createElement("canvas");
    canvas.width = THUMB_SIZE;
    canvas.height = THUMB_SIZE;
    const cam: Camera = { ...DEFAULT_CAMERA };
    if (candidate.displayable) {
      renderToCanvas(canvas, candidate.voxels, cam, this.colors);
      this.attachOrbitAndPick(canvas, candidate, cam);
    }
    cell.append(canvas);
    cell.append(el("div", "count",
      candidate.displayable
        ? `#${candidate.index} — ${candidate.block_count} blocks`
        : `#${candidate.index} — below minimum size`));
    return cell;
  }

  private attachOrbitAndPick(
    canvas: HTMLCanvasElement,
    candidate: Candidate,
    cam: Camera,
  ): void {
    let dragging = false;
    let moved = 0;
    let lastX = 0;
    let lastY = 0;
    canvas.addEventListener("mousedown", (e) => {
      dragging = true;
      moved = 0;
      lastX = e.clientX;
      lastY = e.clientY;
    });
    canvas.addEventListener("mousemove", (e) => {
      if (!dragging) return;
      const dx = e.clientX - lastX;
      const dy = e.clientY - lastY;
      moved += Math.abs(dx) + Math.abs(dy);
      lastX = e.clientX;
      lastY = e.clientY;
      cam.yaw += dx * 0.01;
      cam.pitch = Math.max(-1.4, Math.min(1.4, cam.pitch + dy * 0.01));
      renderToCanvas(canvas, candidate.voxels, cam, this.colors);
    });
    const finish = () => {
      if (dragging && moved < 5) {
        void this.run(() => this.choose(candidate.index));
      }
      dragging = false;
    };
    canvas.addEventListener("mouseup", finish);
    canvas.addEventListener("mouseleave", () => { dragging = false; });
  }

  private showError(message: string, retry: Action): void {
    const existing = this.root.querySelector(".error-banner");
    if (existing) existing.remove();
    const banner = el("div", "error-banner");
    banner.append(el("span", "", message));
    const button = el("button", "", "retry");
    button.addEventListener("click", () => {
      banner.remove();
      void this.run(retry);
    });
    banner.append(button);
    this.root.prepend(banner);
  }
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function label(text: string, input: HTMLElement): HTMLElement {
  const wrap = el("label", "field", text + " ");
  wrap.append(input);
  return wrap;
}

declare global {
  interface Window { evoxelApp?: App; }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const app = new App(document.getElementById("app")!);
  window.evoxelApp = app;
  void app.boot();
}
