// Single-page client. The view is rendered exclusively from server
// responses: every mutation re-fetches the canonical game state, so a page
// reload (or any client) reconstructs the identical view from GET /games/{id}.

import { ApiClient, EncounterView, GameView } from "./api.js";
import { renderHistogram } from "./histogram.js";

const MODES = ["simulator", "hardware"];
const VARIANTS = ["quantum", "classical"];

export class App {
  private view: GameView | null = null;
  private busy = false;
  private error: string | null = null;
  private op: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
  ) {}

  init(): Promise<void> {
    const sessionId = window.location.hash.replace(/^#/, "");
    if (sessionId) {
      return this.track(() => this.loadSession(sessionId));
    }
    this.renderStart();
    return this.op;
  }

  /** Resolves when all in-flight work kicked off by UI events is done. */
  whenIdle(): Promise<void> {
    return this.op;
  }

  private track(work: () => Promise<void>): Promise<void> {
    this.op = this.op.then(work, work);
    return this.op;
  }

  private async loadSession(sessionId: string): Promise<void> {
    try {
      this.view = await this.client.getGame(sessionId);
      this.error = null;
    } catch (err) {
      this.view = null;
      this.error = err instanceof Error ? err.message : String(err);
    }
    if (this.view) {
      this.renderGame(this.view);
    } else {
      this.renderStart();
    }
  }

  private async refresh(): Promise<void> {
    if (!this.view) return;
    await this.loadSession(this.view.session_id);
  }

  // ----- start screen -----------------------------------------------------

  private renderStart(): void {
    this.root.textContent = "";
    const form = el("form", { "data-testid": "start-form", class: "start card" });
    form.append(el("h1", {}, "Unicorn Ascent"));
    if (this.error) {
      form.append(el("p", { class: "error", "data-testid": "error" }, this.error));
    }

    const mode = select("mode", MODES);
    const variant = select("variant", VARIANTS);
    const seed = el("input", {
      id: "seed",
      name: "seed",
      placeholder: "seed (optional integer)",
    }) as HTMLInputElement;
    const encounter = el("input", {
      id: "encounter",
      name: "encounter",
      placeholder: "encounter chance 0..1 (optional)",
    }) as HTMLInputElement;
    const problem = el("p", { class: "form-error", "data-testid": "form-error" }, "");
    const start = el("button", { id: "start", type: "submit" }, "Start flight");

    form.append(
      labelled("Device", mode),
      labelled("Variant", variant),
      labelled("Seed", seed),
      labelled("Encounter chance", encounter),
      problem,
      start,
    );
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const seedText = seed.value.trim();
      if (seedText !== "" && !/^-?\d+$/.test(seedText)) {
        problem.textContent = "Seed must be an integer.";
        return; // invalid input never reaches the server
      }
      const encText = encounter.value.trim();
      if (encText !== "" && !/^\d*\.?\d+$/.test(encText)) {
        problem.textContent = "Encounter chance must be a number in [0, 1].";
        return;
      }
      problem.textContent = "";
      this.track(() =>
        this.startGame({
          mode: mode.value,
          variant: variant.value,
          seed: seedText === "" ? undefined : Number(seedText),
          encounter_prob: encText === "" ? undefined : Number(encText),
        }),
      );
    });
    this.root.append(form);
  }

  private async startGame(options: {
    mode: string;
    variant: string;
    seed?: number;
    encounter_prob?: number;
  }): Promise<void> {
    try {
      const summary = await this.client.createGame(options);
      window.location.hash = summary.session_id;
      this.view = await this.client.getGame(summary.session_id);
      this.error = null;
      this.renderGame(this.view);
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
      this.renderStart();
    }
  }

  // ----- game screen ------------------------------------------------------

  private renderGame(view: GameView): void {
    this.root.textContent = "";
    const screen = el("div", { class: "game card", "data-testid": "game" });

    screen.append(
      el("h1", {}, view.player_name),
      el(
        "p",
        { class: "meta" },
        `${view.variant} · ${view.mode} · seed ${view.seed}`,
      ),
      el(
        "p",
        { class: "goal", "data-testid": "goal" },
        `Goal: ${view.goal} feet`,
      ),
    );

    const pct = Math.min(100, Math.round((view.altitude / view.goal) * 100));
    const fill = el("div", { class: "alt-fill" });
    fill.style.width = `${pct}%`;
    const bar = el("div", { class: "alt-bar", "data-testid": "altitude-bar" }, fill);
    screen.append(
      el(
        "p",
        { class: "altitude", "data-testid": "altitude" },
        `Altitude ${view.altitude} feet`,
      ),
      bar,
    );

    const lastTurn = view.turns[view.turns.length - 1];
    screen.append(
      el(
        "p",
        { class: "status", "data-testid": "status" },
        lastTurn ? lastTurn.message : `${view.player_name} is waiting for you on the ground.`,
      ),
    );

    if (view.status === "won") {
      screen.append(
        el("p", { class: "victory", "data-testid": "victory" }, "You reached the castle! You win!"),
      );
    }

    const disabled = this.busy || view.status !== "in_progress" || view.pending_encounter !== null;
    const up = el("button", { id: "up" }, "Up") as HTMLButtonElement;
    const down = el("button", { id: "down" }, "Down") as HTMLButtonElement;
    up.disabled = disabled;
    down.disabled = disabled;
    up.addEventListener("click", () => this.track(() => this.takeAction("up")));
    down.addEventListener("click", () => this.track(() => this.takeAction("down")));
    screen.append(el("div", { class: "controls" }, up, down));

    if (this.error) {
      screen.append(el("p", { class: "error", "data-testid": "error" }, this.error));
    }

    if (lastTurn && Object.keys(lastTurn.counts).length > 0) {
      screen.append(el("h2", {}, "Last measurement"));
      const hist = el("div", { "data-testid": "turn-histogram" });
      renderHistogram(hist, lastTurn.counts);
      screen.append(hist);
    }

    const resolved = [...view.turns]
      .reverse()
      .find((t) => t.encounter !== null && t.encounter.outcome !== "ongoing");
    if (resolved && resolved.encounter) {
      screen.append(this.encounterResult(resolved.encounter));
    }

    const newGame = el("a", { href: "#", class: "new-game" }, "New game");
    newGame.addEventListener("click", (event) => {
      event.preventDefault();
      window.location.hash = "";
      this.view = null;
      this.error = null;
      this.renderStart();
    });
    screen.append(newGame);
    this.root.append(screen);

    if (view.pending_encounter) {
      this.root.append(this.jewelModal(view.pending_encounter));
    }
  }

  private encounterResult(encounter: EncounterView): HTMLElement {
    const panel = el("div", { class: "encounter card", "data-testid": "encounter-result" });
    const outcome =
      encounter.outcome === "player_won"
        ? `You found the real jewel (+${encounter.altitude_delta ?? 0} altitude)!`
        : `The mischievous cloud found the real jewel (${encounter.altitude_delta ?? 0} altitude).`;
    panel.append(el("p", { class: "toast", "data-testid": "encounter-toast" }, outcome));
    if (encounter.computer_guess) {
      panel.append(
        el("p", {}, `The cloud guessed ${encounter.computer_guess}.`),
      );
    }
    if (encounter.grover_counts) {
      panel.append(el("h2", {}, "Cloud's Grover measurements"));
      const hist = el("div", { "data-testid": "computer-move" });
      renderHistogram(hist, encounter.grover_counts);
      panel.append(hist);
    }
    return panel;
  }

  private jewelModal(encounter: EncounterView): HTMLElement {
    const modal = el("div", { class: "modal card", "data-testid": "jewel-modal" });
    modal.append(
      el("h2", {}, `Round ${encounter.round}: which jewel is the real one?`),
    );
    const buttons = el("div", { class: "jewels" });
    for (const jewel of encounter.jewels) {
      const btn = el("button", { class: "jewel-btn", "data-jewel": jewel }, jewel) as HTMLButtonElement;
      btn.disabled = this.busy;
      btn.addEventListener("click", () => this.track(() => this.makeGuess(jewel)));
      buttons.append(btn);
    }
    modal.append(buttons);
    if (encounter.computer_guess) {
      modal.append(
        el("p", {}, `Last round the cloud guessed ${encounter.computer_guess}.`),
      );
    }
    if (encounter.grover_counts) {
      const hist = el("div", { "data-testid": "modal-computer-move" });
      renderHistogram(hist, encounter.grover_counts);
      modal.append(hist);
    }
    return modal;
  }

  private async takeAction(action: "up" | "down"): Promise<void> {
    if (!this.view || this.busy) return;
    this.busy = true;
    try {
      await this.client.postAction(this.view.session_id, action);
      this.error = null;
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    } finally {
      this.busy = false;
    }
    await this.refresh();
  }

  private async makeGuess(jewel: string): Promise<void> {
    if (!this.view || this.busy) return;
    this.busy = true;
    try {
      await this.client.postGuess(this.view.session_id, jewel);
      this.error = null;
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    } finally {
      this.busy = false;
    }
    await this.refresh();
  }
}

// ----- tiny DOM helpers ----------------------------------------------------

function el(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function select(id: string, options: string[]): HTMLSelectElement {
  const node = el("select", { id, name: id }) as HTMLSelectElement;
  for (const option of options) {
    node.append(el("option", { value: option }, option));
  }
  return node;
}

function labelled(text: string, control: HTMLElement): HTMLElement {
  return el("label", { class: "field" }, el("span", {}, text), control);
}
