// HTML renderers for the workbench panels. Pure string builders so the
// output is testable without a DOM; main.ts assigns the results to
// innerHTML. Every number shown comes verbatim from a service payload.

import type { ResolutionRequest, Snapshot } from './api.js';
import { panelScales } from './scale.js';

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

export function renderPanel(snapshot: Snapshot, title?: string): string {
  const heading = escapeHtml(title ?? snapshot.actor);
  if (snapshot.entries.length === 0) {
    return (
      `<section class="panel"><h3>${heading}</h3>` +
      `<p class="placeholder">no entries</p></section>`
    );
  }
  const scales = panelScales(snapshot.entries.map((e) => e.priority));
  const items = snapshot.entries
    .map((entry, i) => {
      const phrase = entry.object === null
        ? escapeHtml(entry.verb)
        : `${escapeHtml(entry.verb)} ${escapeHtml(entry.object)}`;
      const size = (scales[i] ?? 1).toFixed(3);
      return (
        `<li style="font-size:${size}em" data-priority="${entry.priority}">` +
        `${phrase} <span class="value">(${escapeHtml(entry.display)})</span></li>`
      );
    })
    .join('');
  return `<section class="panel"><h3>${heading}</h3><ul>${items}</ul></section>`;
}

export function renderComparePanels(snapshots: readonly Snapshot[]): string {
  return snapshots
    .map((s) => renderPanel(s, `${s.actor} — ${s.function} @ ${s.c}`))
    .join('');
}

export function renderResolutionModal(request: ResolutionRequest): string {
  const options = request.candidates
    .map((candidate) => {
      const selected = candidate === request.proposed ? ' selected' : '';
      return `<option value="${escapeHtml(candidate)}"${selected}>${escapeHtml(candidate)}</option>`;
    })
    .join('');
  return (
    `<div class="modal" data-request="${escapeHtml(request.request_id)}">` +
    `<p class="kind">${escapeHtml(request.kind)}</p>` +
    `<blockquote>${escapeHtml(request.sentence.text)}</blockquote>` +
    `<select id="resolution-actor">${options}</select>` +
    `<input id="resolution-new-actor" placeholder="or a new actor" />` +
    `<button id="resolution-submit">bind</button>` +
    `<button id="resolution-discard">discard</button>` +
    `</div>`
  );
}

export function renderActorPicker(
  actors: readonly string[],
  selected: readonly string[],
): string {
  return actors
    .map((actor) => {
      const checked = selected.includes(actor) ? ' checked' : '';
      const name = escapeHtml(actor);
      return (
        `<label><input type="checkbox" class="actor-box" value="${name}"${checked}>` +
        `${name}</label>`
      );
    })
    .join('');
}

export function renderBanner(message: string): string {
  return `<div class="banner">${escapeHtml(message)} <button class="dismiss">×</button></div>`;
}

export function renderToast(message: string): string {
  return `<div class="toast">${escapeHtml(message)}</div>`;
}
