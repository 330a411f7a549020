// Slingshot input capture: pointer-down inside an owned planet sends
// Press, pointer-up anywhere sends Release.  Presses on planets we do not
// own are sent anyway and ignored server-side (single source of truth);
// presses on empty space send nothing.

import { pressMessage, releaseMessage, type InputMessage } from './protocol.js';
import type { ViewModel } from './viewmodel.js';

export class InputCapture {
  private pointerDown = false;

  constructor(
    private readonly vm: ViewModel,
    private readonly send: (msg: InputMessage) => void,
  ) {}

  get enabled(): boolean {
    return this.vm.seat === 'player' && this.vm.connected
      && this.vm.status !== 'finished';
  }

  /** Pointer down in game coordinates; returns the message sent, if any. */
  onPointerDown(x: number, y: number): InputMessage | null {
    if (!this.enabled) return null;
    const planet = this.vm.hitTest(x, y);
    if (!planet) return null; // empty space: no message
    this.pointerDown = true;
    if (this.vm.ownsPlanet(planet)) this.vm.pressedPlanet = planet.id;
    const msg = pressMessage(planet.id);
    this.send(msg);
    return msg;
  }

  onPointerUp(): InputMessage | null {
    this.vm.pressedPlanet = null;
    if (!this.enabled || !this.pointerDown) return null;
    this.pointerDown = false;
    const msg = releaseMessage();
    this.send(msg);
    return msg;
  }

  attach(canvas: HTMLCanvasElement, toGame: (ev: PointerEvent) => [number, number]): void {
    canvas.addEventListener('pointerdown', (ev) => {
      const [x, y] = toGame(ev);
      this.onPointerDown(x, y);
    });
    window.addEventListener('pointerup', () => this.onPointerUp());
  }
}
