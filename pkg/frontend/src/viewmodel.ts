// Client-side view state: a latest-frame slot (old frames are dropped,
// never queued), the previous frame kept for interpolation, and the local
// input echo.  Never the source of truth - everything is rebuilt from the
// next frame after a reload.

import type {
  FrameMessage,
  GameStateSnapshot,
  GravityGridMessage,
  InitMessage,
  PlanetState,
  ResultMessage,
  ServerMessage,
} from './protocol.js';

export interface InterpolatedTransporter {
  planetId: number;
  x: number;
  y: number;
  vx: number;
  vy: number;
  payload: number;
  payloadOwner: number;
}

export class ViewModel {
  sessionId = '';
  seat: 'player' | 'spectator' = 'spectator';
  humanSide: number | null = null;
  tickRate = 30;
  status = 'lobby';
  outcome: 'p1' | 'p2' | 'draw' | null = null;
  gravity: GravityGridMessage | null = null;
  showGravity = false; // overlay is opt-in; curved flight reads better bare
  connected = false;
  lastError = '';

  /** planet id currently pressed by the local player, for visual feedback */
  pressedPlanet: number | null = null;

  private current: GameStateSnapshot | null = null;
  private previous: GameStateSnapshot | null = null;
  private currentArrivedAt = 0;
  private framesSeen = 0;
  private framesDropped = 0;

  apply(msg: ServerMessage, now: number = Date.now()): void {
    switch (msg.type) {
      case 'init': {
        const init = msg as InitMessage;
        this.sessionId = init.sessionId;
        this.seat = init.seat;
        this.humanSide = init.humanSide;
        this.tickRate = init.tickRate;
        this.status = init.status;
        this.gravity = init.gravity;
        this.current = init.state;
        this.previous = null;
        this.currentArrivedAt = now;
        break;
      }
      case 'frame': {
        const frame = msg as FrameMessage;
        if (this.current && frame.tick <= this.current.tick) {
          this.framesDropped += 1; // stale or duplicate; latest wins
          return;
        }
        this.previous = this.current;
        this.current = frame.state;
        this.currentArrivedAt = now;
        this.framesSeen += 1;
        this.status = 'running';
        break;
      }
      case 'result': {
        const result = msg as ResultMessage;
        this.outcome = result.outcome;
        this.status = 'finished';
        this.pressedPlanet = null;
        break;
      }
      case 'status':
        this.status = msg.status;
        break;
      case 'error':
        this.lastError = msg.reason;
        break;
    }
  }

  get frame(): GameStateSnapshot | null {
    return this.current;
  }

  get previousFrame(): GameStateSnapshot | null {
    return this.previous;
  }

  get stats(): { seen: number; dropped: number } {
    return { seen: this.framesSeen, dropped: this.framesDropped };
  }

  /** Planet under the pointer, by disk hit test; null on empty space. */
  hitTest(x: number, y: number): PlanetState | null {
    if (!this.current) return null;
    for (const p of this.current.planets) {
      const dx = x - p.x;
      const dy = y - p.y;
      if (dx * dx + dy * dy <= p.radius * p.radius) return p;
    }
    return null;
  }

  ownsPlanet(planet: PlanetState): boolean {
    return this.humanSide !== null && planet.owner === this.humanSide;
  }

  /**
   * Transporter positions blended linearly (in screen space) from the
   * previous frame to the latest one; alpha in [0, 1] is the fraction of a
   * frame interval elapsed since the latest frame arrived.  Rendering runs
   * one frame behind for smoothness; authoritative positions come only
   * from frames.
   */
  transporters(now: number = Date.now()): InterpolatedTransporter[] {
    if (!this.current) return [];
    const interval = 1000 / this.tickRate;
    const alpha = Math.max(0, Math.min(1, (now - this.currentArrivedAt) / interval));
    const out: InterpolatedTransporter[] = [];
    for (const p of this.current.planets) {
      const t = p.transporter;
      if (t.status !== 'inTransit') continue;
      let x = t.x;
      let y = t.y;
      const prev = this.previous?.planets[p.id]?.transporter;
      if (prev && prev.status === 'inTransit') {
        x = prev.x + (t.x - prev.x) * alpha;
        y = prev.y + (t.y - prev.y) * alpha;
      }
      out.push({
        planetId: p.id,
        x,
        y,
        vx: t.vx,
        vy: t.vy,
        payload: t.payload,
        payloadOwner: t.payloadOwner,
      });
    }
    return out;
  }
}
