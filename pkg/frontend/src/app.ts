/** Judge page: one summary on screen at a time, Turing question first. */

import { HttpSurveyApi } from "./api.js";
import { CRITERION_QUESTIONS, RATING_LABELS, TURING_QUESTION } from "./labels.js";
import { SessionController } from "./session.js";
import { CRITERIA } from "./types.js";
import type { Criterion, TuringAnswer } from "./types.js";

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

function render(controller: SessionController, root: HTMLElement): void {
  root.replaceChildren();

  const progress = el(
    "p",
    "progress",
    `answered ${controller.answered} of ${controller.total}`,
  );
  root.appendChild(progress);

  if (controller.notice) {
    root.appendChild(el("p", "notice", controller.notice));
  }

  if (controller.phase === "done") {
    root.appendChild(el("h2", undefined, "all done"));
    root.appendChild(
      el("p", undefined, "thank you for judging these summaries."),
    );
    return;
  }

  if (controller.phase === "loading" || controller.item === null) {
    root.appendChild(el("p", undefined, "loading next summary..."));
    if (controller.error) {
      const retry = el("button", undefined, "retry");
      retry.addEventListener("click", () => {
        void controller.loadNext().then(() => render(controller, root));
      });
      root.appendChild(el("p", "error", controller.error));
      root.appendChild(retry);
    }
    return;
  }

  const summary = el("blockquote", "summary", controller.item.text);
  root.appendChild(summary);

  const form = el("form");
  form.addEventListener("submit", (event) => event.preventDefault());

  // Turing question comes first
  const turing = el("fieldset");
  turing.appendChild(el("legend", undefined, TURING_QUESTION));
  for (const answer of ["human", "machine"] as TuringAnswer[]) {
    const label = el("label", "choice");
    const radio = el("input");
    radio.type = "radio";
    radio.name = "turing";
    radio.value = answer;
    radio.checked = controller.form.turing === answer;
    radio.addEventListener("change", () => {
      controller.answerTuring(answer);
      sync();
    });
    label.append(radio, document.createTextNode(` ${answer}`));
    turing.appendChild(label);
  }
  form.appendChild(turing);

  for (const criterion of CRITERIA) {
    const group = el("fieldset");
    group.appendChild(el("legend", undefined, CRITERION_QUESTIONS[criterion]));
    RATING_LABELS.forEach((text, index) => {
      const value = index + 1;
      const label = el("label", "choice");
      const radio = el("input");
      radio.type = "radio";
      radio.name = `rating-${criterion}`;
      radio.value = String(value);
      radio.checked = controller.form.ratings[criterion] === value;
      radio.addEventListener("change", () => {
        controller.rate(criterion as Criterion, value);
        sync();
      });
      label.append(radio, document.createTextNode(` ${text}`));
      group.appendChild(label);
    });
    form.appendChild(group);
  }

  const errorLine = el("p", "error");
  errorLine.hidden = true;
  form.appendChild(errorLine);

  const submit = el("button", "submit", "submit and continue");
  submit.type = "submit";
  submit.disabled = !controller.canSubmit();
  submit.addEventListener("click", () => {
    void controller.submit().then((advanced) => {
      if (advanced) {
        render(controller, root);
      } else {
        sync();
      }
    });
  });
  form.appendChild(submit);
  root.appendChild(form);

  function sync(): void {
    submit.disabled = !controller.canSubmit();
    errorLine.hidden = controller.error === null;
    errorLine.textContent = controller.error ?? "";
  }

  sync();
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) {
    return;
  }
  const surveyId = new URLSearchParams(window.location.search).get("survey") ?? "survey";
  try {
    const session = await api.newSession(surveyId);
    const controller = new SessionController(api, session.token);
    await controller.start();
    render(controller, root);
  } catch (failure) {
    root.replaceChildren(
      el("p", "error", `could not start a session: ${String(failure)}`),
    );
  }
}

void boot();
