/** Thin typed client for the session service; all UI traffic goes through
 * here so failures surface as typed errors with retry support. */

import { BlockSchema, GenerationPayload, validatePayload } from "./types.js";

export class StaleGenerationError extends Error {}
export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export interface SessionOptions {
  seed?: number;
  n_candidates?: number;
  box_extent?: [number, number, number];
  palette?: string[];
  min_size?: number;
  symmetrize?: boolean;
  activations?: string;
  goal?: string;
}

async function request(base: string, path: string, init?: RequestInit): Promise<unknown> {
  let resp: Response;
  try {
    resp = await fetch(base + path, init);
  } catch (err) {
    throw new ApiError(`network failure: ${String(err)}`, 0);
  }
  const body = await resp.json().catch(() => ({}));
  if (resp.status === 409) {
    throw new StaleGenerationError((body as { detail?: string }).detail ?? "conflict");
  }
  if (!resp.ok) {
    const detail = (body as { detail?: string }).detail ?? resp.statusText;
    throw new ApiError(detail, resp.status);
  }
  return body;
}

function post(base: string, path: string, payload: unknown): Promise<unknown> {
  return request(base, path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  });
}

export class SessionClient {
  constructor(readonly base: string = "") {}

  async createSession(options: SessionOptions): Promise<GenerationPayload> {
    return validatePayload(await post(this.base, "/sessions", options));
  }

  async getGeneration(sessionId: string): Promise<GenerationPayload> {
    return validatePayload(
      await request(this.base, `/sessions/${sessionId}/generation`),
    );
  }

  async submitChoice(
    sessionId: string,
    generation: number,
    index: number,
  ): Promise<GenerationPayload> {
    return validatePayload(
      await post(this.base, `/sessions/${sessionId}/choice`, { generation, index }),
    );
  }

  async reroll(sessionId: string, generation: number): Promise<GenerationPayload> {
    return validatePayload(
      await post(this.base, `/sessions/${sessionId}/reroll`, { generation }),
    );
  }

  async getSchema(): Promise<BlockSchema> {
    return (await request(this.base, "/schema")) as BlockSchema;
  }
}
