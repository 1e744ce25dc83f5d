import { ApiClient } from "./api.js";
import { boardModel } from "./board.js";
import { GameController } from "./controller.js";
import type { Answer, Edge, PropertySpec, Role } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 420;
const BUILTINS = ["complete", "connected", "triangle-free", "planar", "perfect", "has-isolated-vertex"];

function el<K extends keyof HTMLElementTagNameMap>(tag: K, id?: string): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (id) node.id = id;
  return node;
}

export function setupApp(root: HTMLElement, api: ApiClient): GameController {
  const controller = new GameController(api, render);

  const panel = el("div", "panel");
  const nSelect = el("select", "n-select");
  for (const n of [3, 4, 5]) {
    const opt = el("option");
    opt.value = String(n);
    opt.textContent = `n = ${n}`;
    nSelect.append(opt);
  }
  nSelect.value = "5";

  const propSelect = el("select", "property-select");
  for (const name of BUILTINS) {
    const opt = el("option");
    opt.value = `builtin:${name}`;
    opt.textContent = name;
    propSelect.append(opt);
  }
  const customOpt = el("option");
  customOpt.value = "custom";
  customOpt.textContent = "custom file...";
  propSelect.append(customOpt);

  const fileInput = el("input", "property-file");
  fileInput.type = "file";
  fileInput.accept = "application/json";
  fileInput.hidden = true;
  let customProperty: PropertySpec | null = null;
  propSelect.addEventListener("change", () => {
    fileInput.hidden = propSelect.value !== "custom";
  });
  fileInput.addEventListener("change", async () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    try {
      customProperty = JSON.parse(await file.text());
      errorBox.textContent = "";
    } catch {
      customProperty = null;
      errorBox.textContent = "could not parse the property file";
    }
  });

  const roleSelect = el("select", "role-select");
  for (const role of ["bob", "alice"]) {
    const opt = el("option");
    opt.value = role;
    opt.textContent = role === "bob" ? "ask questions (Bob)" : "answer questions (Alice)";
    roleSelect.append(opt);
  }

  const startButton = el("button", "start");
  startButton.textContent = "start game";
  startButton.addEventListener("click", () => {
    const property: PropertySpec | null =
      propSelect.value === "custom" ? customProperty : propSelect.value;
    if (property === null) {
      errorBox.textContent = "choose a property file first";
      return;
    }
    void controller.start(Number(nSelect.value), property, roleSelect.value as Role);
  });

  const hintButton = el("button", "hint");
  hintButton.textContent = "hint";
  hintButton.addEventListener("click", () => void controller.requestHint());

  const answerBox = el("div", "answer-box");
  for (const answer of ["present", "absent"] as Answer[]) {
    const button = el("button", `answer-${answer}`);
    button.textContent = answer;
    button.addEventListener("click", () => void controller.giveAnswer(answer));
    answerBox.append(button);
  }

  const counter = el("span", "counter");
  const candidates = el("span", "candidates");
  const hintBox = el("span", "hint-box");
  const banner = el("div", "banner");
  const errorBox = el("div", "error");

  panel.append(nSelect, propSelect, fileInput, roleSelect, startButton, hintButton, answerBox);
  const status = el("div", "status");
  status.append(counter, candidates, hintBox);

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("id", "board");
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  svg.setAttribute("width", String(SIZE));
  svg.setAttribute("height", String(SIZE));

  root.append(panel, status, banner, errorBox, svg);

  function render(): void {
    const view = controller.view;
    errorBox.textContent = controller.error ?? "";
    while (svg.firstChild) svg.removeChild(svg.firstChild);
    if (!view) {
      counter.textContent = "";
      candidates.textContent = "";
      banner.textContent = "";
      hintBox.textContent = "";
      return;
    }
    const model = boardModel(view, SIZE / 2, SIZE / 2, SIZE / 2 - 40);
    counter.textContent = model.counterText;
    candidates.textContent = model.candidateText;
    banner.textContent = model.banner ?? "";
    hintBox.textContent = controller.hint
      ? `hint: ask ${controller.hint.edge[0]}-${controller.hint.edge[1]} ` +
        `(${controller.hint.worst_case_remaining} more in the worst case)`
      : "";
    answerBox.hidden = !(view.human_role === "alice" && view.status === "ongoing");

    for (const segment of model.segments) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(segment.x1));
      line.setAttribute("y1", String(segment.y1));
      line.setAttribute("x2", String(segment.x2));
      line.setAttribute("y2", String(segment.y2));
      line.setAttribute("class", `edge ${segment.state}${segment.highlighted ? " pending" : ""}`);
      line.setAttribute("data-edge", `${segment.edge[0]}-${segment.edge[1]}`);
      line.addEventListener("click", () => void controller.clickEdge(segment.edge as Edge));
      svg.append(line);
    }
    model.vertices.forEach((p, i) => {
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(p.x));
      circle.setAttribute("cy", String(p.y));
      circle.setAttribute("r", "14");
      circle.setAttribute("class", "vertex");
      svg.append(circle);
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(p.x));
      label.setAttribute("y", String(p.y + 5));
      label.setAttribute("text-anchor", "middle");
      label.setAttribute("class", "vertex-label");
      label.textContent = String(i + 1);
      svg.append(label);
    });
  }

  render();
  return controller;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  setupApp(document.getElementById("app")!, new ApiClient(""));
}
