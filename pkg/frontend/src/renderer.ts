// Canvas renderer: planets as owner-colored circles with rotating turret
// barrels and floored ship counts, transporters as small triangles on
// their (interpolated) curved paths, optional gravity-field arrows.

import type { GameStateSnapshot, PlanetState } from './protocol.js';
import type { InterpolatedTransporter, ViewModel } from './viewmodel.js';

export const OWNER_COLORS: Record<number, string> = {
  0: '#8a8a93', // neutral
  1: '#4da3ff', // player one
  2: '#ff6b5e', // player two
};

export interface SceneTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** Fit the map into the canvas preserving aspect ratio. */
export function fitTransform(
  mapW: number, mapH: number, canvasW: number, canvasH: number,
): SceneTransform {
  const scale = Math.min(canvasW / mapW, canvasH / mapH);
  return {
    scale,
    offsetX: (canvasW - mapW * scale) / 2,
    offsetY: (canvasH - mapH * scale) / 2,
  };
}

export function toCanvas(t: SceneTransform, x: number, y: number): [number, number] {
  return [t.offsetX + x * t.scale, t.offsetY + y * t.scale];
}

export function toGame(t: SceneTransform, x: number, y: number): [number, number] {
  return [(x - t.offsetX) / t.scale, (y - t.offsetY) / t.scale];
}

export function shipLabel(ships: number): string {
  return String(Math.floor(ships)); // display rounds down
}

export function renderFrame(
  ctx: CanvasRenderingContext2D,
  vm: ViewModel,
  canvasW: number,
  canvasH: number,
  now: number = Date.now(),
): void {
  const frame = vm.frame;
  ctx.fillStyle = '#0b0e17';
  ctx.fillRect(0, 0, canvasW, canvasH);
  if (!frame) return;
  const mapW = frame.parameters.mapWidth;
  const mapH = frame.parameters.mapHeight;
  const t = fitTransform(mapW, mapH, canvasW, canvasH);

  if (vm.showGravity && vm.gravity) drawGravity(ctx, vm, t);
  for (const p of frame.planets) drawPlanet(ctx, p, t, vm.pressedPlanet === p.id);
  for (const tr of vm.transporters(now)) drawTransporter(ctx, tr, t);
  drawHud(ctx, vm, frame, canvasW);
}

function drawPlanet(
  ctx: CanvasRenderingContext2D, p: PlanetState, t: SceneTransform, pressed: boolean,
): void {
  const [cx, cy] = toCanvas(t, p.x, p.y);
  const r = p.radius * t.scale;
  ctx.beginPath();
  ctx.arc(cx, cy, r, 0, 2 * Math.PI);
  ctx.fillStyle = OWNER_COLORS[p.owner] ?? OWNER_COLORS[0];
  ctx.fill();
  if (pressed) {
    ctx.lineWidth = 3;
    ctx.strokeStyle = '#ffffff';
    ctx.stroke();
  }
  // turret barrel along the current angle
  ctx.beginPath();
  ctx.moveTo(cx, cy);
  ctx.lineTo(cx + Math.cos(p.turretAngle) * r * 1.45,
             cy + Math.sin(p.turretAngle) * r * 1.45);
  ctx.lineWidth = Math.max(1.5, r * 0.18);
  ctx.strokeStyle = '#e8e8f0';
  ctx.stroke();
  ctx.fillStyle = '#ffffff';
  ctx.font = `${Math.max(10, r * 0.8)}px system-ui, sans-serif`;
  ctx.textAlign = 'center';
  ctx.textBaseline = 'middle';
  ctx.fillText(shipLabel(p.ships), cx, cy);
}

function drawTransporter(
  ctx: CanvasRenderingContext2D, tr: InterpolatedTransporter, t: SceneTransform,
): void {
  const [x, y] = toCanvas(t, tr.x, tr.y);
  const heading = Math.atan2(tr.vy, tr.vx);
  const size = 6;
  ctx.save();
  ctx.translate(x, y);
  ctx.rotate(heading);
  ctx.beginPath();
  ctx.moveTo(size, 0);
  ctx.lineTo(-size * 0.7, size * 0.6);
  ctx.lineTo(-size * 0.7, -size * 0.6);
  ctx.closePath();
  ctx.fillStyle = OWNER_COLORS[tr.payloadOwner] ?? OWNER_COLORS[0];
  ctx.fill();
  ctx.restore();
  ctx.fillStyle = '#cfd2dc';
  ctx.font = '10px system-ui, sans-serif';
  ctx.textAlign = 'center';
  ctx.fillText(shipLabel(tr.payload), x, y - 10);
}

function drawGravity(
  ctx: CanvasRenderingContext2D, vm: ViewModel, t: SceneTransform,
): void {
  const g = vm.gravity!;
  ctx.strokeStyle = 'rgba(160, 170, 200, 0.35)';
  ctx.lineWidth = 1;
  for (let i = 0; i < g.nx; i++) {
    for (let j = 0; j < g.ny; j++) {
      const x = (i + 0.5) * g.cellSize;
      const y = (j + 0.5) * g.cellSize;
      const fx = g.fx[i][j];
      const fy = g.fy[i][j];
      const mag = Math.hypot(fx, fy);
      if (mag === 0) continue;
      const len = Math.min(12, 40 * Math.sqrt(mag));
      const [ax, ay] = toCanvas(t, x, y);
      ctx.beginPath();
      ctx.moveTo(ax, ay);
      ctx.lineTo(ax + (fx / mag) * len, ay + (fy / mag) * len);
      ctx.stroke();
    }
  }
}

function drawHud(
  ctx: CanvasRenderingContext2D, vm: ViewModel, frame: GameStateSnapshot,
  canvasW: number,
): void {
  ctx.fillStyle = '#aab0c0';
  ctx.font = '12px system-ui, sans-serif';
  ctx.textAlign = 'left';
  ctx.textBaseline = 'top';
  ctx.fillText(`tick ${frame.tick}`, 8, 8);
  if (!vm.connected) {
    ctx.fillStyle = '#ffcf5e';
    ctx.textAlign = 'center';
    ctx.fillText('disconnected - trying to reconnect', canvasW / 2, 8);
  }
  if (vm.outcome) {
    ctx.fillStyle = '#ffffff';
    ctx.font = '24px system-ui, sans-serif';
    ctx.textAlign = 'center';
    const label = vm.outcome === 'draw' ? 'draw'
      : vm.outcome === 'p1' ? 'blue wins' : 'red wins';
    ctx.fillText(label, canvasW / 2, 40);
  }
}
