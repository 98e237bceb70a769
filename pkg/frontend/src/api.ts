/** Typed client for the coachd HTTP API. */

export const TASK_TYPES = [
  "AudioTranscription",
  "Categorization",
  "DataCollection",
  "ImageTranscription",
  "ImageTagging",
  "Survey",
  "Writing",
  "Other",
] as const;

export type TaskType = (typeof TASK_TYPES)[number];

export interface DisplaySlot {
  snippet_id: string;
  text: string;
  raw_score: number;
  exploration: boolean;
  author_id: string;
}

export interface DisplayPage {
  worker_id: string;
  task_type: string;
  page_index: number;
  exploration_slot: number | null;
  slots: DisplaySlot[];
}

export interface ApiErrorBody {
  error: string;
  detail: string;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    detail: string,
  ) {
    super(detail);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function decode<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const err = (body ?? {}) as Partial<ApiErrorBody>;
    throw new ApiError(
      response.status,
      err.error ?? "Unknown",
      err.detail ?? `HTTP ${response.status}`,
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    }).then((response) => decode<T>(response));
  }

  registerWorker(workerId: string, tasksCompleted: number): Promise<unknown> {
    return this.post("/workers", {
      worker_id: workerId,
      tasks_completed: tasksCompleted,
    });
  }

  submitSnippet(
    workerId: string,
    taskType: TaskType,
    text: string,
  ): Promise<{ snippet_id: string }> {
    return this.post("/snippets", {
      worker_id: workerId,
      task_type: taskType,
      text,
    });
  }

  castVote(
    workerId: string,
    snippetId: string,
    direction: "up" | "down",
  ): Promise<unknown> {
    return this.post("/votes", {
      worker_id: workerId,
      snippet_id: snippetId,
      direction,
    });
  }

  fetchDisplay(
    workerId: string,
    taskType: TaskType,
    page: number,
  ): Promise<DisplayPage> {
    const params = new URLSearchParams({
      worker_id: workerId,
      task_type: taskType,
      page: String(page),
    });
    return this.fetchImpl(`${this.baseUrl}/display?${params}`).then((response) =>
      decode<DisplayPage>(response),
    );
  }
}
