/** DOM rendering for the panel; all state lives in PanelController. */

import { TASK_TYPES, TaskType } from "./api.js";
import { PanelController, SNIPPET_MAX_CHARS } from "./panel.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function mountPanel(root: HTMLElement, controller: PanelController): void {
  root.innerHTML = "";

  // -- session bar ---------------------------------------------------------
  const sessionBar = el("div", "session-bar");
  const workerInput = el("input");
  workerInput.placeholder = "worker id (e.g. worker01)";
  const tasksInput = el("input");
  tasksInput.placeholder = "tasks completed";
  tasksInput.value = "0";
  tasksInput.type = "number";
  tasksInput.min = "0";
  const joinButton = el("button", "", "join");
  joinButton.onclick = () => {
    const workerId = workerInput.value.trim();
    if (!workerId) return;
    void controller.startSession(workerId, Number(tasksInput.value) || 0).catch(() => {});
  };
  sessionBar.append(workerInput, tasksInput, joinButton);

  // -- task type picker ------------------------------------------------------
  const typeSelect = el("select");
  for (const taskType of TASK_TYPES) {
    const option = el("option", "", taskType);
    option.value = taskType;
    typeSelect.append(option);
  }
  typeSelect.value = "Survey";
  typeSelect.onchange = () => {
    void controller.selectTaskType(typeSelect.value as TaskType);
  };

  // -- display area ----------------------------------------------------------
  const banner = el("div", "banner");
  const retryButton = el("button", "", "retry");
  retryButton.onclick = () => void controller.refresh();
  const cards = el("div", "cards");
  const pager = el("div", "pager");
  const leftButton = el("button", "", "< newer ranks");
  const pageLabel = el("span", "page-label");
  const rightButton = el("button", "", "more coaching >");
  leftButton.onclick = () => void controller.pageLeft();
  rightButton.onclick = () => void controller.pageRight();
  pager.append(leftButton, pageLabel, rightButton);

  // -- snippet composer --------------------------------------------------------
  const composer = el("div", "composer");
  const draftBox = el("textarea");
  draftBox.placeholder = "coach your peers (100 characters max)";
  const counter = el("span", "counter");
  const submitButton = el("button", "", "share coaching");
  const confirmation = el("div", "confirmation");
  draftBox.oninput = () => controller.setDraft(draftBox.value);
  submitButton.onclick = () => void controller.submitDraft();
  composer.append(draftBox, counter, submitButton, confirmation);

  root.append(sessionBar, typeSelect, banner, cards, pager, composer);

  function renderCards(): void {
    const snapshot = controller.snapshot();
    cards.innerHTML = "";
    if (!snapshot.page || snapshot.workerId === null) {
      cards.append(el("div", "placeholder", "join with a worker id to see coaching"));
      return;
    }
    if (snapshot.page.slots.length === 0) {
      cards.append(
        el("div", "placeholder", "no coaching yet for this task type"),
      );
      return;
    }
    for (const slot of snapshot.page.slots) {
      const card = el("div", "card");
      if (slot.exploration) {
        card.append(el("span", "badge", "needs your vote"));
      }
      card.append(el("p", "snippet-text", slot.text));
      const score = el("span", "score", `score ${slot.raw_score}`);
      card.append(score);
      const state = controller.voteState(slot.snippet_id);
      if (state !== "own") {
        const upButton = el("button", "vote-up", "upvote");
        const downButton = el("button", "vote-down", "downvote");
        upButton.disabled = downButton.disabled = state !== "available";
        upButton.onclick = () => void controller.castVote(slot.snippet_id, "up");
        downButton.onclick = () => void controller.castVote(slot.snippet_id, "down");
        card.append(upButton, downButton);
      } else {
        card.append(el("span", "own-note", "your coaching"));
      }
      cards.append(card);
    }
  }

  function render(): void {
    const snapshot = controller.snapshot();
    banner.innerHTML = "";
    if (snapshot.error) {
      banner.append(el("span", "error-text", snapshot.error), retryButton);
      banner.style.display = "block";
    } else {
      banner.style.display = "none";
    }
    pageLabel.textContent = snapshot.loading
      ? "loading..."
      : `page ${snapshot.pageIndex + 1}`;
    leftButton.disabled = snapshot.pageIndex === 0 || snapshot.loading;
    rightButton.disabled = snapshot.loading || snapshot.workerId === null;
    counter.textContent = `${snapshot.draftChars}/${SNIPPET_MAX_CHARS}`;
    counter.classList.toggle("over-limit", snapshot.draftChars > SNIPPET_MAX_CHARS);
    submitButton.disabled = !snapshot.canSubmit;
    confirmation.textContent = snapshot.confirmation ?? "";
    renderCards();
  }

  controller.onChange(render);
  render();
}
