// WebSocket client: forwards parsed server messages into the view model,
// sends input messages, and tracks connection state for the reconnect
// banner.  One socket, latest-frame delivery (dropping is the view
// model's job).

import { parseServerMessage, type InputMessage } from './protocol.js';
import type { ViewModel } from './viewmodel.js';

export class SessionSocket {
  private ws: WebSocket | null = null;

  constructor(
    private readonly vm: ViewModel,
    private readonly onChange: () => void = () => {},
  ) {}

  connect(baseUrl: string, sessionId: string, asPlayer: boolean): void {
    const wsBase = baseUrl.replace(/^http/, 'ws');
    const role = asPlayer ? 'player' : 'spectator';
    const ws = new WebSocket(`${wsBase}/sessions/${sessionId}/ws?role=${role}`);
    this.ws = ws;
    ws.onopen = () => {
      this.vm.connected = true;
      this.onChange();
    };
    ws.onmessage = (ev) => {
      const msg = parseServerMessage(String(ev.data));
      if (msg === null) {
        console.warn('malformed frame retained last good state');
        return;
      }
      this.vm.apply(msg);
      this.onChange();
    };
    ws.onclose = () => {
      this.vm.connected = false; // input disabled, banner shown
      this.onChange();
    };
    ws.onerror = () => {
      this.vm.connected = false;
      this.onChange();
    };
  }

  send(msg: InputMessage): void {
    if (this.ws && this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(JSON.stringify(msg));
    }
  }

  close(): void {
    this.ws?.close();
  }
}
