import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { Client, type FetchLike } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export function fixtureText(name: string): string {
  return readFileSync(join(here, "fixtures", name), "utf-8");
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export interface RecordedCall {
  url: string;
  method: string;
  headers: Record<string, string>;
  body?: string;
}

export interface PatchBehavior {
  status: number;
  body: string;
}

/** Fetch stub that serves the recorded service bodies, routes PATCHes to a
 * configurable responder, and logs every call. */
export function recordedService(sessionId: string,
                                patch?: (call: RecordedCall) => PatchBehavior) {
  const calls: RecordedCall[] = [];
  const routes: Array<[RegExp, string]> = [
    [new RegExp(`/sessions/${sessionId}/ranking`), "service_ranking.json"],
    [new RegExp(`/sessions/${sessionId}/scri/sweep`), "service_scri_sweep.json"],
    [new RegExp(`/sessions/${sessionId}/scri\\?alpha=0\\.2$`), "service_scri_02.json"],
    [new RegExp(`/sessions/${sessionId}/scri\\?alpha=0\\.5$`), "service_scri_05.json"],
    [new RegExp(`/sessions/${sessionId}/scri\\?alpha=0\\.8$`), "service_scri_08.json"],
    [new RegExp(`/sessions/${sessionId}/allocation(\\?tvp=260)?$`),
     "service_allocation_tvp260.json"],
  ];
  const fetchImpl: FetchLike = (input, init) => {
    const call: RecordedCall = {
      url: input,
      method: init?.method ?? "GET",
      headers: (init?.headers as Record<string, string>) ?? {},
      body: typeof init?.body === "string" ? init.body : undefined,
    };
    calls.push(call);
    if (call.method === "PATCH") {
      if (!patch) {
        return Promise.resolve(new Response("unexpected PATCH", { status: 500 }));
      }
      const { status, body } = patch(call);
      return Promise.resolve(new Response(body, { status }));
    }
    for (const [pattern, name] of routes) {
      if (pattern.test(input)) {
        return Promise.resolve(new Response(fixtureText(name), { status: 200 }));
      }
    }
    return Promise.resolve(new Response(`no route for ${input}`, { status: 404 }));
  };
  return { calls, client: new Client("http://svc", fetchImpl) };
}
