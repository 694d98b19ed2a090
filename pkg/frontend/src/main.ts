// Page bootstrap: create a session from pasted problem JSON (or attach to
// an existing one), then hand everything to the polling controller.

import { ApiClient } from "./api.js";
import { SessionController } from "./controller.js";
import { DomSink } from "./dom.js";

const EXAMPLE_PROBLEM = {
  variables: ["x1", "x2", "x3"],
  domains: { x1: { min: 1, max: 3 }, x2: { min: 1, max: 3 }, x3: { min: 1, max: 3 } },
  objective: { coefficients: { x1: 1, x2: 1, x3: 1 }, constant: 0, sense: "min" },
  oracle: { type: "interactive" },
  seed_solution: { x1: 1, x2: 2, x3: 3 },
  epsilon: 0,
  cutoff_seconds: 3600.0,
};

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

const api = new ApiClient("");
let controller: SessionController | null = null;

function attach(sessionId: string): void {
  controller?.stop();
  byId<HTMLElement>("session-id").textContent = sessionId;
  byId<HTMLElement>("setup").style.display = "none";
  byId<HTMLElement>("session-panel").style.display = "block";
  controller = new SessionController(api, sessionId, new DomSink(), 1000);
  controller.start();
}

window.addEventListener("DOMContentLoaded", () => {
  const problemBox = byId<HTMLTextAreaElement>("problem-json");
  problemBox.value = JSON.stringify(EXAMPLE_PROBLEM, null, 2);

  byId<HTMLButtonElement>("create").addEventListener("click", () => {
    void (async () => {
      try {
        const problem = JSON.parse(problemBox.value);
        attach(await api.createSession(problem));
      } catch (err) {
        byId<HTMLElement>("setup-error").textContent = String(err);
      }
    })();
  });

  byId<HTMLButtonElement>("attach").addEventListener("click", () => {
    const sid = byId<HTMLInputElement>("attach-id").value.trim();
    if (sid) {
      attach(sid);
    }
  });

  byId<HTMLButtonElement>("answer-yes").addEventListener("click", () => {
    void controller?.answer(true);
  });
  byId<HTMLButtonElement>("answer-no").addEventListener("click", () => {
    void controller?.answer(false);
  });
});
