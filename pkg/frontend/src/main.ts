// Browser bootstrap: lobby form -> session -> live canvas.

import { InputCapture } from './input.js';
import {
  createSession,
  fetchAgents,
  fetchDefaults,
  PARAMETER_FIELDS,
  startSession,
  type LobbyChoices,
} from './lobby.js';
import { fitTransform, renderFrame, toGame } from './renderer.js';
import { SessionSocket } from './socket.js';
import { ViewModel } from './viewmodel.js';

const BASE = window.location.origin;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

async function buildLobby(): Promise<void> {
  const form = el<HTMLDivElement>('lobby-fields');
  const defaults = await fetchDefaults(BASE);
  for (const field of PARAMETER_FIELDS) {
    const row = document.createElement('label');
    row.className = 'field';
    row.innerHTML = `<span>${field.label}</span>`;
    const input = document.createElement('input');
    input.type = 'number';
    input.id = `param-${field.key}`;
    if (field.step) input.step = String(field.step);
    input.value = String(defaults[field.key]);
    const err = document.createElement('em');
    err.id = `error-${field.key}`;
    err.className = 'field-error';
    row.append(input, err);
    form.append(row);
  }
  const picker = el<HTMLSelectElement>('ai-picker');
  for (const agent of await fetchAgents(BASE)) {
    if (agent.includes('ITER')) continue; // template entries
    const opt = document.createElement('option');
    opt.value = agent;
    opt.textContent = agent;
    picker.append(opt);
  }
  picker.value = 'heuristic';
}

function readChoices(): LobbyChoices {
  const parameters: Record<string, number> = {};
  for (const field of PARAMETER_FIELDS) {
    parameters[field.key] = Number(el<HTMLInputElement>(`param-${field.key}`).value);
  }
  return {
    parameters,
    seed: Number(el<HTMLInputElement>('seed').value),
    humanSide: Number(el<HTMLSelectElement>('side-picker').value),
    ai: el<HTMLSelectElement>('ai-picker').value,
    tickRate: 30,
  };
}

async function launch(): Promise<void> {
  for (const field of PARAMETER_FIELDS) {
    el(`error-${field.key}`).textContent = '';
  }
  el('lobby-error').textContent = '';
  const choices = readChoices();
  const result = await createSession(BASE, choices);
  if (!result.ok || !result.id) {
    for (const [key, msg] of Object.entries(result.fieldErrors)) {
      const slot = document.getElementById(`error-${key}`);
      if (slot) slot.textContent = msg;
      else el('lobby-error').textContent = `${key}: ${msg}`;
    }
    if (result.error) el('lobby-error').textContent = result.error;
    return;
  }

  el('lobby').style.display = 'none';
  el('game').style.display = 'block';
  const canvas = el<HTMLCanvasElement>('gameCanvas');
  const ctx = canvas.getContext('2d')!;
  const vm = new ViewModel();
  const socket = new SessionSocket(vm);
  const input = new InputCapture(vm, (msg) => socket.send(msg));
  input.attach(canvas, (ev) => {
    const rect = canvas.getBoundingClientRect();
    const frame = vm.frame;
    const mapW = frame ? frame.parameters.mapWidth : canvas.width;
    const mapH = frame ? frame.parameters.mapHeight : canvas.height;
    const t = fitTransform(mapW, mapH, canvas.width, canvas.height);
    return toGame(t, ev.clientX - rect.left, ev.clientY - rect.top);
  });
  el<HTMLInputElement>('gravity-toggle').addEventListener('change', (ev) => {
    vm.showGravity = (ev.target as HTMLInputElement).checked;
  });

  socket.connect(BASE, result.id, choices.humanSide !== 0);
  await startSession(BASE, result.id);

  const resize = () => {
    canvas.width = canvas.clientWidth;
    canvas.height = canvas.clientHeight;
  };
  window.addEventListener('resize', resize);
  resize();
  const loop = () => {
    renderFrame(ctx, vm, canvas.width, canvas.height);
    requestAnimationFrame(loop);
  };
  requestAnimationFrame(loop);
}

window.addEventListener('load', () => {
  buildLobby().catch((e) => {
    el('lobby-error').textContent = String(e);
  });
  el('start-button').addEventListener('click', () => {
    launch().catch((e) => {
      el('lobby-error').textContent = String(e);
    });
  });
});
