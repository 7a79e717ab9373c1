/* Browser wiring: one session per tab, exact-fraction input, canvas
 * number line.  All decisions come from client.ts / numberline.ts; this
 * file only moves data between the DOM and the service. */

import { ArenaClient, SessionView } from "./api.js";
import { validateMove } from "./client.js";
import { Rational } from "./rational.js";
import { Drawing, ZoomState, autoZoom, initialZoom, layout } from "./numberline.js";

const WIDTH = 900;
const HEIGHT = 220;
const OVERLAY_DEPTH = 6;

interface Elements {
  status: HTMLElement;
  bounds: HTMLElement;
  input: HTMLInputElement;
  submit: HTMLButtonElement;
  message: HTMLElement;
  canvas: HTMLCanvasElement;
  newGame: HTMLButtonElement;
  engine: HTMLSelectElement;
}

function els(): Elements {
  const get = (id: string) => {
    const el = document.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el;
  };
  return {
    status: get("status"),
    bounds: get("bounds"),
    input: get("move") as HTMLInputElement,
    submit: get("submit") as HTMLButtonElement,
    message: get("message"),
    canvas: get("numberline") as HTMLCanvasElement,
    newGame: get("new-game") as HTMLButtonElement,
    engine: get("engine") as HTMLSelectElement,
  };
}

function render(canvas: HTMLCanvasElement, drawing: Drawing): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, WIDTH, HEIGHT);
  const axisY = HEIGHT - 40;
  ctx.strokeStyle = "#334";
  ctx.beginPath();
  ctx.moveTo(0, axisY);
  ctx.lineTo(WIDTH, axisY);
  ctx.stroke();
  // target overlay cells
  ctx.fillStyle = "rgba(120, 170, 255, 0.35)";
  for (const box of drawing.overlay) {
    ctx.fillRect(box.loX, axisY - 14, Math.max(box.hiX - box.loX, 1), 14);
  }
  // current legal interval
  if (drawing.legal) {
    ctx.fillStyle = "rgba(90, 200, 120, 0.45)";
    ctx.fillRect(drawing.legal.loX, axisY, Math.max(drawing.legal.hiX - drawing.legal.loX, 1), 10);
  }
  // nested bracket pairs, deeper rounds taller
  for (const mark of drawing.brackets) {
    const h = 18 + mark.round * 9;
    ctx.strokeStyle = "#c52";
    if (mark.loX !== null) {
      ctx.beginPath();
      ctx.moveTo(mark.loX, axisY);
      ctx.lineTo(mark.loX, axisY - h);
      ctx.lineTo(mark.loX + 6, axisY - h);
      ctx.stroke();
    }
    ctx.strokeStyle = "#27b";
    if (mark.hiX !== null) {
      ctx.beginPath();
      ctx.moveTo(mark.hiX, axisY);
      ctx.lineTo(mark.hiX, axisY - h);
      ctx.lineTo(mark.hiX - 6, axisY - h);
      ctx.stroke();
    }
  }
  ctx.fillStyle = "#223";
  ctx.font = "12px sans-serif";
  ctx.fillText(`window [${drawing.window.lo}, ${drawing.window.hi}]`, 8, 16);
  ctx.fillText(`zoom events: ${drawing.zoomEvents}`, 8, 32);
}

export function startConsole(base: string): void {
  const ui = els();
  const client = new ArenaClient(base);
  let view: SessionView | null = null;
  let zoom: ZoomState | null = null;
  let overlay: [string, string][] = [];

  const repaint = () => {
    if (!view || !zoom) return;
    if (view.rounds.length > 0) {
      const last = view.rounds[view.rounds.length - 1]!;
      zoom = autoZoom(zoom, Rational.parse(last[0]), Rational.parse(last[1]));
    }
    render(ui.canvas, layout(view, overlay, zoom, WIDTH));
    ui.status.textContent =
      `session ${view.id}: round ${view.rounds.length}, you are ${view.human_side} ` +
      `vs ${view.engine}`;
    ui.bounds.textContent =
      `your move must satisfy ${view.legal_bounds.lo} < m < ${view.legal_bounds.hi}`;
  };

  ui.newGame.addEventListener("click", () => {
    void (async () => {
      view = await client.createSession({
        config: { a0: "0/1", b0: "1/1" },
        human_side: "A",
        engine: ui.engine.value,
        target: "middle-thirds",
      });
      zoom = initialZoom("0/1", "1/1");
      overlay = (await client.targetTree(view.id, OVERLAY_DEPTH)).intervals;
      ui.message.textContent = "";
      repaint();
    })();
  });

  ui.submit.addEventListener("click", () => {
    void (async () => {
      if (!view) return;
      const check = validateMove(ui.input.value, view.legal_bounds);
      if (!check.ok) {
        ui.message.textContent = `rejected locally: ${check.message}`;
        return;
      }
      const outcome = await client.postMove(view.id, check.value);
      if (!outcome.ok) {
        const bound = outcome.error.bound;
        ui.message.textContent =
          `server rejected: ${outcome.error.detail}` +
          (bound ? ` (bounds ${bound.lo} .. ${bound.hi})` : "");
        return;
      }
      view = outcome.view;
      ui.message.textContent =
        `accepted ${outcome.view.accepted_move}; engine replied ${outcome.view.engine_move}`;
      ui.input.value = "";
      repaint();
    })();
  });
}

declare global {
  interface Window {
    startCantorConsole: (base: string) => void;
  }
}

if (typeof window !== "undefined") {
  window.startCantorConsole = startConsole;
}
