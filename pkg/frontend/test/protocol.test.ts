import { describe, expect, it } from 'vitest';

import {
  parseServerMessage,
  pressMessage,
  releaseMessage,
  velocityAngle,
} from '../src/protocol.js';
import { fitTransform, shipLabel, toCanvas, toGame } from '../src/renderer.js';
import { buildSessionRequest, splitFieldErrors } from '../src/lobby.js';

describe('message parsing', () => {
  it('accepts known message types', () => {
    const msg = parseServerMessage('{"type":"frame","tick":3,"state":{}}');
    expect(msg?.type).toBe('frame');
  });

  it('rejects malformed or unknown payloads', () => {
    expect(parseServerMessage('not json')).toBeNull();
    expect(parseServerMessage('42')).toBeNull();
    expect(parseServerMessage('{"type":"warp"}')).toBeNull();
  });

  it('builds input messages in the wire encoding', () => {
    expect(pressMessage(4)).toEqual({ type: 'input', action: { kind: 'press', planet: 4 } });
    expect(releaseMessage()).toEqual({ type: 'input', action: { kind: 'release' } });
  });

  it('velocity angle normalizes to [0, 2pi) like turret angles', () => {
    const angle = velocityAngle({
      status: 'inTransit', x: 0, y: 0, vx: 0, vy: -1, payload: 0, payloadOwner: 1,
    });
    expect(angle).toBeCloseTo((3 * Math.PI) / 2, 9);
  });
});

describe('scene transform', () => {
  it('fits the map preserving aspect ratio and round-trips points', () => {
    const t = fitTransform(640, 480, 1280, 720);
    expect(t.scale).toBeCloseTo(1.5); // height-limited
    const [cx, cy] = toCanvas(t, 320, 240);
    const [gx, gy] = toGame(t, cx, cy);
    expect(gx).toBeCloseTo(320, 9);
    expect(gy).toBeCloseTo(240, 9);
  });

  it('ship labels round down', () => {
    expect(shipLabel(99.94)).toBe('99');
    expect(shipLabel(0.4)).toBe('0');
  });
});

describe('lobby requests', () => {
  it('maps spectator side to null humanSide', () => {
    const body = buildSessionRequest({
      parameters: { numPlanets: 20 }, seed: 7, humanSide: 0, ai: 'heuristic', tickRate: 30,
    });
    expect(body.humanSide).toBeNull();
    expect(body.seed).toBe(7);
  });

  it('splits server validation strings into per-field errors', () => {
    const errors = splitFieldErrors([
      'numPlanets: must be >= 2 (two players need distinct home planets)',
      'minRadius/maxRadius: need 0 < minRadius <= maxRadius',
    ]);
    expect(errors.numPlanets).toContain('>= 2');
    expect(errors.minRadius).toContain('minRadius');
  });
});
