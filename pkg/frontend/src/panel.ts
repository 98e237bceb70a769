/**
 * Panel state machine, kept free of DOM concerns so it can be tested
 * against a mocked API client.
 *
 * Rules mirrored from the server so the panel never sends a request the
 * server is guaranteed to reject: drafts submit only at 1..100 Unicode
 * scalar values, task types come from the closed dropdown, votes go out at
 * most once per snippet per session, own snippets get no vote buttons, and
 * the page index never drops below zero. At most one mutation is in flight
 * at a time.
 */

import { ApiClient, ApiError, DisplayPage, TaskType } from "./api.js";

export const SNIPPET_MAX_CHARS = 100;

export type VoteState = "available" | "pending" | "voted" | "own";

export interface PanelSnapshot {
  workerId: string | null;
  taskType: TaskType;
  pageIndex: number;
  page: DisplayPage | null;
  loading: boolean;
  /** Network/HTTP failure banner; null when the last request succeeded. */
  error: string | null;
  draft: string;
  draftChars: number;
  canSubmit: boolean;
  confirmation: string | null;
}

/** Unicode scalar values, not UTF-16 code units: what the server counts. */
export function countChars(text: string): number {
  return [...text].length;
}

export class PanelController {
  private workerId: string | null = null;
  private taskType: TaskType = "Survey";
  private pageIndex = 0;
  private page: DisplayPage | null = null;
  private loading = false;
  private error: string | null = null;
  private draft = "";
  private confirmation: string | null = null;
  private votedSnippets = new Set<string>();
  private mutationInFlight = false;
  private listeners: Array<() => void> = [];

  constructor(private readonly api: ApiClient) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  snapshot(): PanelSnapshot {
    const chars = countChars(this.draft);
    return {
      workerId: this.workerId,
      taskType: this.taskType,
      pageIndex: this.pageIndex,
      page: this.page,
      loading: this.loading,
      error: this.error,
      draft: this.draft,
      draftChars: chars,
      canSubmit:
        this.workerId !== null &&
        !this.mutationInFlight &&
        chars >= 1 &&
        chars <= SNIPPET_MAX_CHARS &&
        this.draft.trim().length > 0,
      confirmation: this.confirmation,
    };
  }

  voteState(snippetId: string): VoteState {
    const slot = this.page?.slots.find((s) => s.snippet_id === snippetId);
    if (slot && this.workerId !== null && slot.author_id === this.workerId) {
      return "own";
    }
    if (this.votedSnippets.has(snippetId)) return "voted";
    if (this.mutationInFlight) return "pending";
    return "available";
  }

  /** One session = one worker identity; switching resets session state. */
  async startSession(workerId: string, tasksCompleted: number): Promise<void> {
    this.workerId = workerId;
    this.votedSnippets.clear();
    this.pageIndex = 0;
    this.page = null;
    this.confirmation = null;
    this.error = null;
    try {
      await this.api.registerWorker(workerId, tasksCompleted);
    } catch (err) {
      // Re-joining with a known id is fine; anything else surfaces.
      if (!(err instanceof ApiError && err.code === "DuplicateId")) {
        this.error = describe(err);
        this.notify();
        throw err;
      }
    }
    await this.refresh();
  }

  async selectTaskType(taskType: TaskType): Promise<void> {
    this.taskType = taskType;
    this.pageIndex = 0;
    await this.refresh();
  }

  async refresh(): Promise<void> {
    if (this.workerId === null) return;
    this.loading = true;
    this.error = null;
    this.notify();
    try {
      this.page = await this.api.fetchDisplay(
        this.workerId,
        this.taskType,
        this.pageIndex,
      );
    } catch (err) {
      this.error = describe(err);
    } finally {
      this.loading = false;
      this.notify();
    }
  }

  async pageRight(): Promise<void> {
    this.pageIndex += 1;
    await this.refresh();
  }

  async pageLeft(): Promise<void> {
    this.pageIndex = Math.max(0, this.pageIndex - 1);
    await this.refresh();
  }

  setDraft(text: string): void {
    this.draft = text;
    this.confirmation = null;
    this.notify();
  }

  async submitDraft(): Promise<void> {
    if (!this.snapshot().canSubmit || this.workerId === null) return;
    this.mutationInFlight = true;
    this.notify();
    try {
      const created = await this.api.submitSnippet(
        this.workerId,
        this.taskType,
        this.draft,
      );
      this.draft = "";
      this.confirmation = `coaching saved as ${created.snippet_id}`;
      this.error = null;
    } catch (err) {
      this.confirmation = null;
      this.error = describe(err);
    } finally {
      this.mutationInFlight = false;
      this.notify();
    }
  }

  /**
   * At most one POST per snippet per session: repeat clicks, clicks while a
   * mutation is pending, and clicks on own snippets are all no-ops. The raw
   * score updates optimistically and reverts if the server rejects.
   */
  async castVote(snippetId: string, direction: "up" | "down"): Promise<void> {
    if (this.workerId === null || this.mutationInFlight) return;
    if (this.voteState(snippetId) !== "available") return;
    const slot = this.page?.slots.find((s) => s.snippet_id === snippetId);
    if (!slot) return;

    this.mutationInFlight = true;
    this.votedSnippets.add(snippetId);
    const delta = direction === "up" ? 1 : -1;
    slot.raw_score += delta;
    this.notify();
    try {
      await this.api.castVote(this.workerId, snippetId, direction);
      this.error = null;
    } catch (err) {
      slot.raw_score -= delta;
      if (err instanceof ApiError && err.code === "DuplicateVote") {
        // Server says this session already voted: keep the buttons disabled.
      } else {
        this.votedSnippets.delete(snippetId);
        this.error = describe(err);
      }
    } finally {
      this.mutationInFlight = false;
      this.notify();
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  if (err instanceof Error) return err.message;
  return String(err);
}
