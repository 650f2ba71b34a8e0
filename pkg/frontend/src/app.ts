/**
 * Browser entry: renders the quiver, forwards clicks as mutations,
 * U undoes, the palette replays named sequences frame by frame. All
 * mathematics stays server side; the view is a pure function of the last
 * response (optimistic rendering stays off).
 */

import { HttpTransport, SessionClient, SeedState } from "./protocol.js";
import { buildViewModel } from "./viewmodel.js";
import { renderSvg } from "./render.js";

const PRESETS: Record<string, Record<string, unknown>> = {
  "bigon (n=3)": { surface: "polygon", n: 3, k: 0, variant: "extended" },
  "triangle (n=4)": { surface: "polygon", n: 4, k: 1, variant: "reduced" },
  "P4 (n=3)": { surface: "polygon", n: 3, k: 2, variant: "reduced" },
  "star P5 (n=3)": { surface: "polygon", n: 3, k: 3, variant: "reduced" },
};

const SEQUENCES = [
  { label: "flip (1,3)", request: { name: "flip", edge: [1, 3] } },
  { label: "flip (1,4)", request: { name: "flip", edge: [1, 4] } },
];

class App {
  private client = new SessionClient(new HttpTransport("/session"));
  private state: SeedState | null = null;
  private board = document.getElementById("board")!;
  private status = document.getElementById("status")!;
  private inspector = document.getElementById("inspector")!;

  async start(): Promise<void> {
    const picker = document.getElementById("preset") as HTMLSelectElement;
    for (const name of Object.keys(PRESETS)) {
      const opt = document.createElement("option");
      opt.value = name;
      opt.textContent = name;
      picker.appendChild(opt);
    }
    picker.addEventListener("change", () => this.build(picker.value));
    const palette = document.getElementById("palette")!;
    for (const seq of SEQUENCES) {
      const btn = document.createElement("button");
      btn.textContent = seq.label;
      btn.addEventListener("click", () => this.runSequence(seq.request));
      palette.appendChild(btn);
    }
    document.addEventListener("keydown", (ev) => {
      if (ev.key === "u" || ev.key === "U") this.undo();
    });
    this.board.addEventListener("click", (ev) => {
      const target = (ev.target as Element).closest("[data-vertex]");
      if (target) this.clickVertex(target.getAttribute("data-vertex")!);
    });
    await this.build(Object.keys(PRESETS)[0]);
  }

  private async build(preset: string): Promise<void> {
    const resp = await this.client.build(
      PRESETS[preset] as unknown as Parameters<SessionClient["build"]>[0]);
    if (resp.ok && resp.state) {
      this.state = resp.state;
      this.redraw();
      this.note(`built ${preset}`);
    } else {
      this.note(`build failed: ${resp.error}`);
    }
  }

  private async clickVertex(id: string): Promise<void> {
    const resp = await this.client.mutate(id);
    if (!resp.ok) {
      this.shake(id);
      this.note(resp.error ?? "mutation rejected");
      return;
    }
    this.state = resp.state!;
    this.redraw();
    this.note(`mutated at ${id}`);
    await this.inspect(id);
  }

  private async undo(): Promise<void> {
    const resp = await this.client.undo();
    if (resp.ok && resp.state) {
      this.state = resp.state;
      this.redraw();
      this.note("undo");
    } else {
      this.note(resp.error ?? "nothing to undo");
    }
  }

  private async runSequence(request: { name: string; edge?: number[] }
                            ): Promise<void> {
    const resp = await this.client.runNamedSequence(
      request.name, {}, request.edge as [number, number] | undefined);
    if (!resp.ok) {
      this.note(resp.error ?? "sequence failed");
      return;
    }
    for (const frame of resp.frames ?? []) {
      this.state = frame;
      this.redraw();
      await new Promise((r) => setTimeout(r, 350));
    }
    this.note(`ran ${request.name}: ${resp.word?.join(", ")}`);
  }

  private async inspect(id: string): Promise<void> {
    const resp = await this.client.variable(id);
    if (resp.ok) {
      this.inspector.textContent =
        `A_${id} = ${resp.rendered} (${resp.terms?.length} terms)`;
    }
  }

  private redraw(): void {
    if (!this.state) return;
    this.board.innerHTML = renderSvg(buildViewModel(this.state));
    const hist = this.state.history;
    this.note(`history: ${hist.length ? hist.join(" ") : "(initial)"}`);
  }

  private note(text: string): void {
    this.status.textContent = text;
  }

  private shake(id: string): void {
    const el = this.board.querySelector(`[data-vertex="${id}"]`);
    if (el) {
      el.classList.add("shake");
      setTimeout(() => el.classList.remove("shake"), 400);
    }
  }
}

new App().start().catch((err) => {
  document.getElementById("status")!.textContent =
    `connection lost: ${err}. reload to reconnect.`;
});
