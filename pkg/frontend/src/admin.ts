/** Admin dashboard: rating histograms, FP/FN summary, Turing accuracy. */

import { HttpSurveyApi, UnauthorizedError } from "./api.js";
import { barChart } from "./charts.js";
import { buildDashboard, parseAggregate } from "./dashboard.js";

const api = new HttpSurveyApi();

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function renderLogin(root: HTMLElement, message?: string): void {
  root.replaceChildren();
  if (message) {
    root.appendChild(el("p", "error", message));
  }
  const form = el("form");
  form.appendChild(el("label", undefined, "admin token"));
  const input = el("input");
  input.type = "password";
  const button = el("button", undefined, "view aggregate");
  button.type = "submit";
  form.append(input, button);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void load(root, input.value);
  });
  root.appendChild(form);
}

function renderDashboard(root: HTMLElement, raw: unknown): void {
  root.replaceChildren();
  const aggregate = parseAggregate(raw);
  if (aggregate === null) {
    root.appendChild(
      el("p", "error banner", "the aggregate payload is malformed; nothing to show"),
    );
    return;
  }
  const model = buildDashboard(aggregate);
  root.appendChild(el("h2", undefined, `survey ${model.surveyId}`));
  if (model.empty) {
    root.appendChild(el("p", "empty", "no responses recorded yet"));
    return;
  }
  root.appendChild(
    el(
      "p",
      "ratios",
      `responses: ${model.responseCount} | FP ratio ${model.fpRatio.toFixed(3)} | ` +
        `FN ratio ${model.fnRatio.toFixed(3)} | perfect sessions ${model.perfectSessions}`,
    ),
  );
  const charts = el("div", "charts");
  for (const { criterion, counts } of model.histograms) {
    charts.appendChild(
      barChart(
        document,
        criterion,
        counts.map((value, index) => ({ label: String(index + 1), value })),
      ),
    );
  }
  root.appendChild(charts);
  root.appendChild(
    barChart(
      document,
      "turing accuracy per item (%)",
      model.itemAccuracies.map(({ itemId, accuracy }) => ({
        label: itemId,
        value: accuracy === null ? 0 : Math.round(accuracy * 100),
      })),
      100,
    ),
  );
}

async function load(root: HTMLElement, token: string): Promise<void> {
  const surveyId = new URLSearchParams(window.location.search).get("survey") ?? "survey";
  try {
    const raw = await api.aggregate(surveyId, token);
    renderDashboard(root, raw);
  } catch (failure) {
    if (failure instanceof UnauthorizedError) {
      renderLogin(root, "that token was rejected; try again");
    } else {
      root.replaceChildren(el("p", "error banner", String(failure)));
    }
  }
}

const root = document.getElementById("admin");
if (root) {
  renderLogin(root);
}
