// Lobby: the parameter form, the AI opponent picker, and session creation.
// Server-side validation errors come back keyed by field name and are
// rendered inline.

export interface LobbyChoices {
  parameters: Record<string, number>;
  seed: number;
  humanSide: number;
  ai: string;
  tickRate: number;
}

export const PARAMETER_FIELDS: { key: string; label: string; step?: number }[] = [
  { key: 'numPlanets', label: 'Planets' },
  { key: 'mapWidth', label: 'Map width (px)' },
  { key: 'mapHeight', label: 'Map height (px)' },
  { key: 'gravitationalConstant', label: 'Gravitational constant', step: 0.01 },
  { key: 'growthRateMin', label: 'Growth rate min', step: 0.01 },
  { key: 'growthRateMax', label: 'Growth rate max', step: 0.01 },
  { key: 'radialSeparation', label: 'Radial separation', step: 0.1 },
  { key: 'minRadius', label: 'Min radius (px)' },
  { key: 'maxRadius', label: 'Max radius (px)' },
  { key: 'shipLaunchSpeed', label: 'Launch speed (px/tick)', step: 0.1 },
  { key: 'transportTax', label: 'Transport tax (ships/tick)', step: 0.01 },
  { key: 'transferRatio', label: 'Transfer ratio', step: 0.05 },
  { key: 'turretRotationRate', label: 'Turret rate (rad/tick)', step: 0.01 },
  { key: 'slingshotLoadRate', label: 'Slingshot load rate', step: 0.1 },
  { key: 'neutralGarrisonMax', label: 'Neutral garrison max' },
  { key: 'maxTicks', label: 'Tick limit' },
  { key: 'gravityGridCell', label: 'Gravity cell (px)', step: 0.5 },
];

export function buildSessionRequest(choices: LobbyChoices): Record<string, unknown> {
  return {
    parameters: choices.parameters,
    seed: choices.seed,
    humanSide: choices.humanSide === 0 ? null : choices.humanSide,
    ai: choices.ai,
    tickRate: choices.tickRate,
  };
}

export async function fetchDefaults(baseUrl: string): Promise<Record<string, number>> {
  // any fresh session body echoes defaults; simplest is a static copy that
  // matches the server's GameParameters defaults
  void baseUrl;
  return {
    numPlanets: 20,
    mapWidth: 640,
    mapHeight: 480,
    gravitationalConstant: 0.25,
    growthRateMin: 0.02,
    growthRateMax: 0.1,
    radialSeparation: 2.0,
    minRadius: 8,
    maxRadius: 24,
    shipLaunchSpeed: 3.0,
    transportTax: 0.05,
    transferRatio: 0.5,
    turretRotationRate: 0.05,
    slingshotLoadRate: 1.0,
    neutralGarrisonMax: 30,
    maxTicks: 2000,
    gravityGridCell: 1.0,
  };
}

export async function fetchAgents(baseUrl: string): Promise<string[]> {
  const r = await fetch(`${baseUrl}/agents`);
  if (!r.ok) throw new Error(`GET /agents failed: ${r.status}`);
  const body = (await r.json()) as { examples?: string[]; agents?: string[] };
  return body.examples ?? body.agents ?? [];
}

export interface CreateSessionResult {
  ok: boolean;
  id?: string;
  fieldErrors: Record<string, string>;
  error?: string;
}

/** Per-field messages come back as "fieldName: explanation" strings. */
export function splitFieldErrors(problems: string[]): Record<string, string> {
  const out: Record<string, string> = {};
  for (const p of problems) {
    const idx = p.indexOf(':');
    if (idx > 0) {
      out[p.slice(0, idx).split('/')[0].trim()] = p.slice(idx + 1).trim();
    } else {
      out[''] = p;
    }
  }
  return out;
}

export async function createSession(
  baseUrl: string, choices: LobbyChoices,
): Promise<CreateSessionResult> {
  const r = await fetch(`${baseUrl}/sessions`, {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify(buildSessionRequest(choices)),
  });
  const body = await r.json().catch(() => ({}));
  if (r.ok) {
    return { ok: true, id: (body as { id: string }).id, fieldErrors: {} };
  }
  const detail = (body as { detail?: unknown }).detail;
  if (detail && typeof detail === 'object' && 'invalidParameters' in detail) {
    const problems = (detail as { invalidParameters: string[] }).invalidParameters;
    return { ok: false, fieldErrors: splitFieldErrors(problems) };
  }
  return { ok: false, fieldErrors: {}, error: String(detail ?? r.status) };
}

export async function startSession(baseUrl: string, id: string): Promise<void> {
  const r = await fetch(`${baseUrl}/sessions/${id}/start`, { method: 'POST' });
  if (!r.ok) throw new Error(`start failed: ${r.status}`);
}
