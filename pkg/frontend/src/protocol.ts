// Wire types for the session server's HTTP + WebSocket protocol.
// The server is the single source of truth; everything here is a readonly
// projection of its JSON payloads.

export interface TransporterState {
  status: 'docked' | 'inTransit';
  x: number;
  y: number;
  vx: number;
  vy: number;
  payload: number;
  payloadOwner: number;
}

export interface PlanetState {
  id: number;
  x: number;
  y: number;
  radius: number;
  growthRate: number;
  owner: number; // 0 neutral, 1, 2
  ships: number;
  turretAngle: number;
  transporter: TransporterState;
}

export interface GameStateSnapshot {
  version: number;
  tick: number;
  parameters: Record<string, number>;
  actuators: string[];
  pendingSource: (number | null)[];
  pressLatch: (number | null)[];
  planets: PlanetState[];
  gravity: null;
}

export interface GravityGridMessage {
  cellSize: number;
  nx: number;
  ny: number;
  fx: number[][];
  fy: number[][];
}

export interface InitMessage {
  type: 'init';
  sessionId: string;
  seat: 'player' | 'spectator';
  humanSide: number | null;
  tickRate: number;
  status: string;
  parameters: Record<string, number>;
  gravity: GravityGridMessage | null;
  state: GameStateSnapshot;
}

export interface FrameMessage {
  type: 'frame';
  tick: number;
  state: GameStateSnapshot;
}

export interface ResultMessage {
  type: 'result';
  outcome: 'p1' | 'p2' | 'draw';
  tick: number;
}

export interface ErrorMessage {
  type: 'error';
  reason: string;
}

export interface StatusMessage {
  type: 'status';
  status: string;
  reason?: string;
}

export type ServerMessage =
  | InitMessage
  | FrameMessage
  | ResultMessage
  | ErrorMessage
  | StatusMessage;

export interface ActionRecord {
  kind: 'noop' | 'select' | 'press' | 'release' | 'pair';
  planet?: number;
  source?: number;
  target?: number;
}

export interface InputMessage {
  type: 'input';
  action: ActionRecord;
}

export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== 'object' || data === null) return null;
  const type = (data as { type?: unknown }).type;
  if (
    type === 'init' ||
    type === 'frame' ||
    type === 'result' ||
    type === 'error' ||
    type === 'status'
  ) {
    return data as ServerMessage;
  }
  return null;
}

export function pressMessage(planet: number): InputMessage {
  return { type: 'input', action: { kind: 'press', planet } };
}

export function releaseMessage(): InputMessage {
  return { type: 'input', action: { kind: 'release' } };
}

/** Direction of a transporter's velocity, in radians matching turretAngle. */
export function velocityAngle(t: TransporterState): number {
  const angle = Math.atan2(t.vy, t.vx);
  return angle < 0 ? angle + 2 * Math.PI : angle;
}
