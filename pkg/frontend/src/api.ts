/** Typed client for the wm HTTP API. Every number shown in the UI comes
 *  through here: the client computes no physics of its own. */

export interface VariantFields {
  ident: string;
  comment: string;
  n: number;
  eta: number;
  kf: number;
  rhof: number;
  anus: number;
  viscosity: number;
  permeabil: number;
  i_sealed: number;
  i_seepage: number;
  i_eta: number;
  iDrawGraph: number;
}

export interface VariantListing extends VariantFields {
  index: number;
}

export interface SetPayload {
  path: string | null;
  selected: number | null;
  modified: boolean;
  variants: VariantListing[];
}

export interface ComputeResponse {
  run_id: string;
  variant: number;
  ident: string;
  unsaved_changes: boolean;
  tables: string[];
  i_eta: number;
}

export interface SeriesColumn {
  label: string;
  values: (number | null)[];
}

export interface SeriesPayload {
  name: string;
  x_label: string;
  n_rows: number;
  offset: number;
  columns: SeriesColumn[];
}

export interface ValidationFailure {
  violations: string[];
  warnings: string[];
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number,
              readonly validation?: ValidationFailure) {
    super(message);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(private readonly fetchFn: FetchLike = (u, i) => fetch(u, i),
              private readonly base: string = "") {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const resp = await this.fetchFn(this.base + path, init);
    if (!resp.ok) {
      let detail = `${resp.status}`;
      let validation: ValidationFailure | undefined;
      try {
        const body = await resp.json();
        if (Array.isArray(body.violations)) {
          validation = body as ValidationFailure;
          detail = body.violations.join("; ");
        } else if (body.error) {
          detail = body.error;
        }
      } catch {
        // non-JSON error body: keep the status text
      }
      throw new ApiError(detail, resp.status, validation);
    }
    return resp;
  }

  async listVariants(): Promise<SetPayload> {
    return (await this.request("/api/variants")).json();
  }

  async loadDatText(text: string): Promise<SetPayload> {
    return (await this.request("/api/variants", {
      method: "POST",
      headers: { "content-type": "text/plain" },
      body: text,
    })).json();
  }

  async editVariant(index: number,
                    patch: Partial<VariantFields>): Promise<VariantListing> {
    return (await this.request(`/api/variants/${index}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(patch),
    })).json();
  }

  async cloneVariant(index: number): Promise<VariantListing> {
    return (await this.request(`/api/variants/${index}/clone`,
                               { method: "POST" })).json();
  }

  async deleteVariant(index: number): Promise<SetPayload> {
    return (await this.request(`/api/variants/${index}`,
                               { method: "DELETE" })).json();
  }

  async compute(index: number, incidence: "P" | "SV"): Promise<ComputeResponse> {
    return (await this.request("/api/compute", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ variant: index, incidence }),
    })).json();
  }

  async table(runId: string, name: string): Promise<SeriesPayload> {
    return (await this.request(`/api/runs/${runId}/tables/${name}`)).json();
  }

  async log(runId: string): Promise<string> {
    return (await this.request(`/api/runs/${runId}/log`)).text();
  }

  async downloadDat(): Promise<string> {
    return (await this.request("/api/files/dat")).text();
  }
}
