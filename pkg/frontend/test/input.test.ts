import { describe, expect, it } from 'vitest';

import { InputCapture } from '../src/input.js';
import type { InputMessage } from '../src/protocol.js';
import { ViewModel } from '../src/viewmodel.js';

import type { GameStateSnapshot, PlanetState } from '../src/protocol.js';

function makeVm(planets: PlanetState[]): ViewModel {
  const vm = new ViewModel();
  const state: GameStateSnapshot = {
    version: 1,
    tick: 0,
    parameters: { mapWidth: 640, mapHeight: 480 },
    actuators: ['slingshot', 'sourceTarget'],
    pendingSource: [null, null],
    pressLatch: [null, null],
    planets,
    gravity: null,
  };
  vm.apply({
    type: 'init', sessionId: 'g1', seat: 'player', humanSide: 1, tickRate: 30,
    status: 'running', parameters: state.parameters, gravity: null, state,
  });
  vm.connected = true;
  return vm;
}

const mine: PlanetState = {
  id: 0, x: 100, y: 100, radius: 20, growthRate: 0.05, owner: 1, ships: 50,
  turretAngle: 0,
  transporter: { status: 'docked', x: 100, y: 100, vx: 0, vy: 0, payload: 0, payloadOwner: 0 },
};
const theirs: PlanetState = { ...mine, id: 1, x: 400, owner: 2 };

function capture(vm: ViewModel): { input: InputCapture; sent: InputMessage[] } {
  const sent: InputMessage[] = [];
  const input = new InputCapture(vm, (m) => sent.push(m));
  return { input, sent };
}

describe('slingshot input capture', () => {
  it('press inside an owned planet sends Press, release sends Release', () => {
    const vm = makeVm([mine, theirs]);
    const { input, sent } = capture(vm);
    input.onPointerDown(105, 95);
    input.onPointerUp();
    expect(sent).toEqual([
      { type: 'input', action: { kind: 'press', planet: 0 } },
      { type: 'input', action: { kind: 'release' } },
    ]);
  });

  it('press on empty space sends nothing', () => {
    const vm = makeVm([mine]);
    const { input, sent } = capture(vm);
    input.onPointerDown(500, 400);
    input.onPointerUp();
    expect(sent).toEqual([]);
  });

  it('presses on planets we do not own are still sent (server decides)', () => {
    const vm = makeVm([mine, theirs]);
    const { input, sent } = capture(vm);
    input.onPointerDown(400, 100);
    expect(sent).toEqual([{ type: 'input', action: { kind: 'press', planet: 1 } }]);
    expect(vm.pressedPlanet).toBeNull(); // no local echo for foreign planets
  });

  it('input is disabled when finished or disconnected', () => {
    const vm = makeVm([mine]);
    const { input, sent } = capture(vm);
    vm.apply({ type: 'result', outcome: 'p1', tick: 10 });
    input.onPointerDown(100, 100);
    expect(sent).toEqual([]);
    const vm2 = makeVm([mine]);
    vm2.connected = false;
    const pair = capture(vm2);
    pair.input.onPointerDown(100, 100);
    expect(pair.sent).toEqual([]);
  });

  it('local press echo tracks owned planets', () => {
    const vm = makeVm([mine, theirs]);
    const { input } = capture(vm);
    input.onPointerDown(100, 100);
    expect(vm.pressedPlanet).toBe(0);
    input.onPointerUp();
    expect(vm.pressedPlanet).toBeNull();
  });
});
