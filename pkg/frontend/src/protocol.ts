/**
 * Client for the qcaw session protocol.
 *
 * The server speaks newline-delimited JSON, one request and one response
 * per line, strictly serialized. All state lives server side: the client
 * never recomputes mutation, it only renders responses.
 */

export interface VertexInfo {
  id: string;
  frozen: boolean;
  green: boolean | null;
  gvector: Record<string, number>;
}

export interface ArrowInfo {
  src: string;
  dst: string;
  weight2: number;
}

export interface SeedState {
  schema: string;
  build: Record<string, unknown>;
  history: string[];
  vertices: VertexInfo[];
  arrows: ArrowInfo[];
  pi: [string, string, number][];
}

export interface SessionResponse {
  ok: boolean;
  error?: string;
  echo?: unknown;
  state?: SeedState;
  gvector?: Record<string, number>;
  green?: Record<string, boolean>;
  vertex?: string;
  terms?: { exponents: Record<string, number>; coeff: [number, number][] }[];
  rendered?: string;
  word?: string[];
  frames?: SeedState[];
  bye?: boolean;
}

export interface BuildParams {
  surface: string;
  n: number;
  k: number;
  variant: "reduced" | "extended" | "qc";
  diagonals?: [number, number][];
}

/** One request line in, one response line out. */
export interface Transport {
  request(line: string): Promise<string>;
  close(): Promise<void>;
}

export class SessionClient {
  constructor(private transport: Transport) {}

  private async send(req: unknown): Promise<SessionResponse> {
    const line = await this.transport.request(JSON.stringify(req));
    return JSON.parse(line) as SessionResponse;
  }

  build(params: BuildParams): Promise<SessionResponse> {
    return this.send({ cmd: "build", params });
  }

  getState(): Promise<SessionResponse> {
    return this.send({ cmd: "get_state" });
  }

  mutate(vertex: string): Promise<SessionResponse> {
    return this.send({ cmd: "mutate", vertex });
  }

  undo(): Promise<SessionResponse> {
    return this.send({ cmd: "undo" });
  }

  reset(): Promise<SessionResponse> {
    return this.send({ cmd: "reset" });
  }

  gvector(vertex: string): Promise<SessionResponse> {
    return this.send({ cmd: "gvector", vertex });
  }

  variable(vertex: string): Promise<SessionResponse> {
    return this.send({ cmd: "variable", vertex });
  }

  greenness(): Promise<SessionResponse> {
    return this.send({ cmd: "greenness" });
  }

  runNamedSequence(name: string, params: Record<string, unknown> = {},
                   edge?: [number, number]): Promise<SessionResponse> {
    const req: Record<string, unknown> = { cmd: "run_named_sequence", name };
    if (edge) req.edge = edge;
    if (Object.keys(params).length) req.params = params;
    return this.send(req);
  }

  async quit(): Promise<void> {
    try {
      await this.send({ cmd: "quit" });
    } finally {
      await this.transport.close();
    }
  }
}

/** Browser transport: one HTTP POST per protocol line via the bridge. */
export class HttpTransport implements Transport {
  constructor(private endpoint: string = "/session") {}

  async request(line: string): Promise<string> {
    const res = await fetch(this.endpoint, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: line,
    });
    if (!res.ok) throw new Error(`bridge error ${res.status}`);
    return res.text();
  }

  async close(): Promise<void> {}
}
